#include "docel/generate.hpp"

#include <algorithm>
#include <map>

#include "docel/errors.hpp"
#include "docel/rng.hpp"

namespace docel {
namespace {

constexpr std::int64_t kMicrosPerMinute = 60'000'000;

struct CatalogProduct {
  const char* name;
  std::int64_t price_cents;
  std::int64_t weight;
};

// Built-in catalog; entries beyond the list are derived from it so any
// max_products value works.
constexpr CatalogProduct kO2dCatalog[] = {
    {"Walnut Desk", 18900, 45},       {"Office Chair", 8950, 12},
    {"Desk Lamp", 3499, 3},           {"Monitor Stand", 2799, 4},
    {"Mechanical Keyboard", 10999, 2},{"Wireless Mouse", 4599, 1},
    {"Laptop Sleeve", 2299, 1},       {"USB Hub", 1899, 1},
    {"Notebook Set", 1249, 1},        {"Fountain Pen", 5750, 1},
    {"Bookshelf", 12900, 38},         {"Reading Chair", 23900, 30},
    {"Floor Lamp", 7850, 8},          {"Area Rug", 15600, 14},
    {"Wall Clock", 3350, 2},          {"Ceramic Planter", 2850, 5},
    {"Coffee Table", 14500, 28},      {"Side Table", 9200, 15},
    {"Picture Frame", 1650, 1},       {"Throw Blanket", 4250, 2},
};
constexpr std::size_t kO2dCatalogSize = sizeof(kO2dCatalog) / sizeof(kO2dCatalog[0]);

struct ShipProduct {
  const char* name;
  std::int64_t value_cents;
  bool fragile;
};

constexpr ShipProduct kShipCatalog[] = {
    {"Porcelain Vase", 4000, true},
    {"Paperback Book", 1500, false},
    {"Desk Lamp", 6000, false},
};
constexpr std::size_t kShipCatalogSize = sizeof(kShipCatalog) / sizeof(kShipCatalog[0]);

const char* kFirstNames[] = {"Ada",   "Bram",  "Clara",   "Dries",  "Elif",  "Femke",
                             "Gilles","Hanne", "Ines",    "Joris",  "Katrien","Lars",
                             "Mira",  "Noor",  "Otto",    "Paulien","Quinten","Rosa",
                             "Stijn", "Tess",  "Umut",    "Vera",   "Wout",  "Yara"};
const char* kLastNames[] = {"Aerts",    "Claes",   "De Smet",  "Dubois",  "Evers",
                            "Goossens", "Hermans", "Jacobs",   "Janssens","Lambert",
                            "Maes",     "Martens", "Mertens",  "Peeters", "Segers",
                            "Simons",   "Stevens", "Van Damme","Willems", "Wouters"};
const char* kBankCodes[] = {"GKCC", "KRED", "ARSP", "BBRU"};
const char* kStreets[] = {"Maple Street",     "Oak Avenue",      "Elm Drive",
                          "Cedar Lane",       "Birch Road",      "Willow Way",
                          "Aspen Court",      "Chestnut Boulevard","Juniper Close",
                          "Linden Square",    "Poplar Walk",     "Magnolia Terrace",
                          "Hazel Grove",      "Rowan Place",     "Sycamore Row",
                          "Alder Path"};
const char* kCities[] = {"Springfield", "Riverton",  "Lakewood",  "Fairview", "Brookside",
                         "Hillcrest",   "Meadowvale","Northgate", "Eastwood", "Westbrook"};
const char* kPaymentMethods[] = {"credit card", "debit card", "bank transfer", "voucher"};
const char* kDeliveryTypes[] = {"standard", "express"};

template <typename T, std::size_t N>
const T& pick(Rng& rng, const T (&list)[N]) {
  return list[rng.below(N)];
}

std::string make_person_name(Rng& rng) {
  return std::string(pick(rng, kFirstNames)) + " " + pick(rng, kLastNames);
}

std::string make_bank_account(Rng& rng) {
  std::string out = "BE";
  out += static_cast<char>('0' + rng.below(10));
  out += static_cast<char>('0' + rng.below(10));
  out += pick(rng, kBankCodes);
  for (int i = 0; i < 10; ++i) out += static_cast<char>('0' + rng.below(10));
  return out;
}

std::string make_address(Rng& rng) {
  std::string out = std::to_string(1 + rng.below(200));
  out += " ";
  out += pick(rng, kStreets);
  out += ", ";
  out += pick(rng, kCities);
  return out;
}

AttributeValue money(std::int64_t cents) {
  return AttributeValue::real(static_cast<double>(cents) / 100.0);
}

// Events and dynamic rows are staged with a creation sequence number, then
// sorted by (ts, sequence) and only then given ids e1..eN, so the final
// (ts, eid) order never depends on tie-breaking between orders.
struct StagedRow {
  std::string attr;
  std::string oid;
  AttributeValue value;
};

struct StagedEvent {
  std::size_t seq;
  Timestamp ts;
  std::string activity;
  std::vector<std::string> objects;
  std::map<std::string, AttributeValue> attrs;
  std::vector<StagedRow> rows;
};

class LogBuilder {
 public:
  StagedEvent& add_event(Timestamp ts, std::string activity, std::vector<std::string> objects) {
    StagedEvent ev;
    ev.seq = staged_.size();
    ev.ts = ts;
    ev.activity = std::move(activity);
    ev.objects = std::move(objects);
    staged_.push_back(std::move(ev));
    return staged_.back();
  }

  void add_object(std::string oid, std::string type,
                  std::map<std::string, AttributeValue> statics) {
    ObjectInstance obj;
    obj.oid = std::move(oid);
    obj.type = std::move(type);
    obj.static_attrs = std::move(statics);
    objects_.push_back(std::move(obj));
  }

  // Registry entries exist even when no row was ever staged for them.
  void finish(DocelLog& log, const std::map<std::string, std::string>& dyn_registry) {
    std::stable_sort(staged_.begin(), staged_.end(), [](const StagedEvent& a, const StagedEvent& b) {
      if (a.ts != b.ts) return a.ts < b.ts;
      return a.seq < b.seq;
    });
    for (auto& obj : objects_) {
      std::string oid = obj.oid;
      log.objects.emplace(std::move(oid), std::move(obj));
    }
    for (const auto& [attr, otype] : dyn_registry) {
      DynamicTable table;
      table.attr = attr;
      table.otype = otype;
      log.dynamic_tables.emplace(attr, std::move(table));
    }
    std::map<std::string, std::size_t> vid_counters;
    std::size_t index = 1;
    for (auto& staged : staged_) {
      Event ev;
      ev.eid = "e" + std::to_string(index++);
      ev.activity = std::move(staged.activity);
      ev.ts = staged.ts;
      ev.objects = std::move(staged.objects);
      std::sort(ev.objects.begin(), ev.objects.end(), IdLess{});
      ev.attrs = std::move(staged.attrs);
      for (auto& row : staged.rows) {
        DynamicTable& table = log.dynamic_tables.at(row.attr);
        std::size_t n = ++vid_counters[row.attr];
        table.rows.push_back({"v" + std::to_string(n), row.oid, ev.eid, std::move(row.value)});
      }
      log.events.push_back(std::move(ev));
    }
    log.sort_events();
  }

 private:
  std::vector<StagedEvent> staged_;
  std::vector<ObjectInstance> objects_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(Errc::invalid_params, message);
}

void validate_common(std::int64_t num_orders, const GapMinutes& gap) {
  require(num_orders >= 0, "num_orders must not be negative");
  require(gap.min_minutes >= 1, "inter_event_gap minimum must be at least one minute");
  require(gap.min_minutes <= gap.max_minutes, "inter_event_gap minimum exceeds maximum");
}

void require_probability(double p, const char* name) {
  require(p >= 0.0 && p <= 1.0, std::string(name) + " must lie in [0, 1]");
}

Timestamp add_minutes(Timestamp t, std::int64_t minutes) {
  return Timestamp{t.micros + minutes * kMicrosPerMinute};
}

CatalogProduct o2d_product(std::int64_t index) {
  const CatalogProduct& base = kO2dCatalog[index % kO2dCatalogSize];
  std::int64_t round = index / static_cast<std::int64_t>(kO2dCatalogSize);
  return {base.name, base.price_cents + 100 * round, base.weight + 5 * round};
}

ShipProduct ship_product(std::int64_t index) {
  const ShipProduct& base = kShipCatalog[index % kShipCatalogSize];
  std::int64_t round = index / static_cast<std::int64_t>(kShipCatalogSize);
  return {base.name, base.value_cents + 1000 * round, base.fragile};
}

}  // namespace

Timestamp default_start_time() { return *parse_timestamp("2023-05-01T08:00:00Z"); }

std::vector<std::string> ShipParams::default_resource_pool() {
  return {"Astrid", "Bert", "Chiara", "Daan", "Emma", "Frits", "Greet", "Hugo"};
}

DocelLog generate_order_to_delivery(const O2DParams& p) {
  validate_common(p.num_orders, p.inter_event_gap);
  require(p.max_products >= 1, "max_products must be at least 1");
  require(p.max_items >= 1, "max_items must be at least 1");
  require_probability(p.p_remove_item, "p_remove_item");
  require_probability(p.p_change_address, "p_change_address");
  require_probability(p.p_fail_delivery, "p_fail_delivery");

  DocelLog log;
  log.object_types = {"Customer", "Item", "Order", "Packages", "Product Type"};
  log.event_attr_names = {"Delivery Type", "Discount", "Invoice Number", "Payment Method"};
  const std::map<std::string, std::string> registry = {
      {"Customer Address", "Customer"}, {"Order Price", "Order"}, {"Weight", "Order"}};
  LogBuilder builder;
  if (p.num_orders == 0) {
    builder.finish(log, registry);
    return log;
  }

  Rng rng(p.seed);
  for (std::int64_t i = 0; i < p.max_products; ++i) {
    CatalogProduct product = o2d_product(i);
    builder.add_object("pt" + std::to_string(i + 1), "Product Type",
                       {{"Price", money(product.price_cents)},
                        {"Product Name", AttributeValue::string(product.name)},
                        {"Weight", AttributeValue::integer(product.weight)}});
  }

  const double kDiscounts[] = {0.0, 0.05, 0.1, 0.15};
  std::int64_t item_counter = 0;
  auto gap = [&] { return rng.range(p.inter_event_gap.min_minutes, p.inter_event_gap.max_minutes); };

  // Per order, draws happen in a fixed sequence: customer identity, start
  // offset, item count, per-item product, discount, address, per-item
  // removal coins, payment fields, delivery type, address-change coin (plus
  // replacement address) and failure coins. Changing the flow reshuffles
  // every later value for the same seed.
  for (std::int64_t k = 1; k <= p.num_orders; ++k) {
    std::string customer = "c" + std::to_string(k);
    builder.add_object(customer, "Customer",
                       {{"Bank Account", AttributeValue::string(make_bank_account(rng))},
                        {"Name", AttributeValue::string(make_person_name(rng))}});
    std::string order = "o" + std::to_string(k);
    builder.add_object(order, "Order", {});

    Timestamp t = add_minutes(p.start_time, static_cast<std::int64_t>(rng.below(43201)));
    std::int64_t item_count = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p.max_items)));
    struct OrderItem {
      std::string oid;
      std::int64_t price_cents;
      std::int64_t weight;
    };
    std::vector<OrderItem> items;
    std::int64_t weight_total = 0;
    std::int64_t price_total = 0;
    for (std::int64_t i = 0; i < item_count; ++i) {
      CatalogProduct product = o2d_product(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p.max_products))));
      std::string oid = "i" + std::to_string(++item_counter);
      builder.add_object(oid, "Item",
                         {{"Price", money(product.price_cents)},
                          {"Weight", AttributeValue::integer(product.weight)}});
      items.push_back({oid, product.price_cents, product.weight});
      weight_total += product.weight;
      price_total += product.price_cents;
    }
    double discount = kDiscounts[rng.below(4)];
    std::string address = make_address(rng);

    std::vector<std::string> create_refs = {customer, order};
    for (const auto& item : items) create_refs.push_back(item.oid);
    StagedEvent& create = builder.add_event(t, "Create order", create_refs);
    create.attrs.emplace("Discount", AttributeValue::real(discount));
    create.rows.push_back({"Customer Address", customer, AttributeValue::string(address)});
    create.rows.push_back({"Weight", order, AttributeValue::integer(weight_total)});
    create.rows.push_back({"Order Price", order, money(price_total)});

    for (const auto& item : items) {
      t = add_minutes(t, gap());
      builder.add_event(t, "Pick items", {order, item.oid});
    }
    // The first item is never removed, so an order keeps at least one item.
    for (std::size_t i = 1; i < items.size(); ++i) {
      if (!rng.chance(p.p_remove_item)) continue;
      t = add_minutes(t, gap());
      weight_total -= items[i].weight;
      price_total -= items[i].price_cents;
      StagedEvent& removal = builder.add_event(t, "Remove item", {order, items[i].oid});
      removal.rows.push_back({"Weight", order, AttributeValue::integer(weight_total)});
      removal.rows.push_back({"Order Price", order, money(price_total)});
    }

    t = add_minutes(t, gap());
    StagedEvent& pay = builder.add_event(t, "Pay order", {customer, order});
    pay.attrs.emplace("Payment Method", AttributeValue::string(pick(rng, kPaymentMethods)));
    std::string invoice = "INV-" + std::to_string(k) + "-";
    for (int d = 0; d < 4; ++d) invoice += static_cast<char>('0' + rng.below(10));
    pay.attrs.emplace("Invoice Number", AttributeValue::string(invoice));

    std::string package = "p" + std::to_string(k);
    builder.add_object(package, "Packages",
                       {{"Price", money(price_total)},
                        {"Weight", AttributeValue::integer(weight_total)}});
    t = add_minutes(t, gap());
    builder.add_event(t, "Create package", {order, package});

    AttributeValue delivery_type = AttributeValue::string(pick(rng, kDeliveryTypes));
    auto send = [&] {
      t = add_minutes(t, gap());
      builder.add_event(t, "Send package", {order, package}).attrs.emplace("Delivery Type", delivery_type);
    };
    auto fail = [&] {
      t = add_minutes(t, gap());
      builder.add_event(t, "Failed delivery", {order, package}).attrs.emplace("Delivery Type", delivery_type);
    };
    send();
    if (rng.chance(p.p_change_address)) {
      t = add_minutes(t, gap());
      std::string new_address = make_address(rng);
      while (new_address == address) new_address = make_address(rng);
      StagedEvent& change = builder.add_event(t, "Change address", {customer, order});
      change.rows.push_back({"Customer Address", customer, AttributeValue::string(new_address)});
      fail();
      send();
    }
    for (int attempt = 0; attempt < 2 && rng.chance(p.p_fail_delivery); ++attempt) {
      fail();
      send();
    }
    t = add_minutes(t, gap());
    builder.add_event(t, "Deliver package", {customer, order, package}).attrs.emplace("Delivery Type", delivery_type);
  }

  builder.finish(log, registry);
  return log;
}

DocelLog generate_shipping_method(const ShipParams& p) {
  validate_common(p.num_orders, p.inter_event_gap);
  require(p.num_customers >= 1, "num_customers must be at least 1");
  require(p.num_products >= 1, "num_products must be at least 1");
  require(p.value_threshold > 0, "value_threshold must be positive");
  require_probability(p.p_refund, "p_refund");
  require(!p.resource_pool.empty(), "resource_pool must not be empty");

  DocelLog log;
  log.object_types = {"Customers", "Orders", "Product Type"};
  log.event_attr_names = {"Resource"};
  const std::map<std::string, std::string> registry = {
      {"Refund", "Orders"}, {"Shipping Method", "Orders"}, {"Value", "Orders"}};
  LogBuilder builder;
  if (p.num_orders == 0) {
    builder.finish(log, registry);
    return log;
  }

  Rng rng(p.seed);
  std::vector<ShipProduct> catalog;
  for (std::int64_t i = 0; i < p.num_products; ++i) {
    ShipProduct product = ship_product(i);
    catalog.push_back(product);
    builder.add_object("pt" + std::to_string(i + 1), "Product Type",
                       {{"Fragile", AttributeValue::boolean(product.fragile)},
                        {"Value", money(product.value_cents)}});
  }

  std::int64_t customer_count = 0;
  auto gap = [&] { return rng.range(p.inter_event_gap.min_minutes, p.inter_event_gap.max_minutes); };
  auto resource = [&] { return AttributeValue::string(p.resource_pool[rng.below(p.resource_pool.size())]); };

  // Per order, the draw sequence is: customer reuse coin (and either the new
  // customer's name/account or the reused index), start offset, line count,
  // per-line product and unit count, one resource per event as events are
  // laid down, and finally the refund coin.
  for (std::int64_t k = 1; k <= p.num_orders; ++k) {
    std::string customer;
    bool reuse = customer_count > 0 &&
                 (customer_count >= p.num_customers || !rng.chance(0.5));
    if (reuse) {
      customer = "c" + std::to_string(1 + rng.below(static_cast<std::uint64_t>(customer_count)));
    } else {
      customer = "c" + std::to_string(++customer_count);
      builder.add_object(customer, "Customers",
                         {{"Bank Account", AttributeValue::string(make_bank_account(rng))},
                          {"Name", AttributeValue::string(make_person_name(rng))}});
    }
    std::string order = "o" + std::to_string(k);

    Timestamp t = add_minutes(p.start_time, static_cast<std::int64_t>(rng.below(43201)));
    std::int64_t line_count = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p.num_products)));
    struct Line {
      std::int64_t product;
      std::int64_t units;
    };
    std::vector<Line> lines;
    std::int64_t units_total = 0;
    std::int64_t value_cents = 0;
    bool fragile = false;
    for (std::int64_t l = 0; l < line_count; ++l) {
      Line line;
      line.product = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p.num_products)));
      line.units = 1 + static_cast<std::int64_t>(rng.below(4));
      lines.push_back(line);
      units_total += line.units;
      value_cents += line.units * catalog[static_cast<std::size_t>(line.product)].value_cents;
      fragile = fragile || catalog[static_cast<std::size_t>(line.product)].fragile;
    }
    builder.add_object(order, "Orders", {{"Quantity", AttributeValue::integer(units_total)}});

    auto event = [&](const char* activity, bool first = false) -> StagedEvent& {
      if (!first) t = add_minutes(t, gap());
      StagedEvent& ev = builder.add_event(t, activity, {customer, order});
      ev.attrs.emplace("Resource", resource());
      return ev;
    };

    event("Place order", true).rows.push_back({"Refund", order, AttributeValue::integer(0)});
    event("Confirm purchase").rows.push_back({"Value", order, money(value_cents)});
    for (const Line& line : lines) {
      std::string product = "pt" + std::to_string(line.product + 1);
      for (std::int64_t u = 0; u < line.units; ++u) {
        StagedEvent& ev = event("Retrieve products");
        ev.objects.push_back(product);
      }
    }
    for (const Line& line : lines) {
      std::string product = "pt" + std::to_string(line.product + 1);
      for (std::int64_t u = 0; u < line.units; ++u) {
        StagedEvent& ev = event("Wrap product");
        ev.objects.push_back(product);
      }
    }
    event("Confirm shipping information");
    std::string method =
        (fragile || value_cents > p.value_threshold * 100) ? "courier" : "mail";
    event("Determine shipping method").rows.push_back({"Shipping Method", order, AttributeValue::string(method)});
    event("Send invoice");
    event(method == "mail" ? "Ship by mail" : "Ship by courier");
    event("Package arrived");
    event("Determine satisfaction");
    if (rng.chance(p.p_refund)) {
      event("Request refund").rows.push_back({"Refund", order, AttributeValue::integer(1)});
      event("Confirm shipping information");
      event("Determine shipping method").rows.push_back({"Shipping Method", order, AttributeValue::string("express courier")});
      event("Ship by courier");
      event("Send recollect letter");
      event("Return package");
      event("Refund customer").rows.push_back({"Value", order, AttributeValue::real(0.0)});
      event("Package arrived");
      event("Determine satisfaction");
    }
    event("File order");
  }

  builder.finish(log, registry);
  return log;
}

OcelLog flatten_to_ocel(const DocelLog& gold, bool sparse) {
  OcelLog out;
  out.events = gold.events;
  out.objects = gold.objects;
  out.object_types = gold.object_types;
  out.event_attr_names = gold.event_attr_names;
  out.sort_events();

  std::map<std::string, std::size_t> event_pos;
  for (std::size_t i = 0; i < out.events.size(); ++i) event_pos[out.events[i].eid] = i;

  for (const auto& [attr, table] : gold.dynamic_tables) {
    out.event_attr_names.insert(attr);
    // Rows grouped per object, in table order (which follows event order).
    std::map<std::string, std::vector<const DynamicAttributeRow*>> per_object;
    for (const auto& row : table.rows) per_object[row.oid].push_back(&row);
    for (const auto& [oid, rows] : per_object) {
      std::map<std::string, const AttributeValue*> at_event;  // eid -> value
      for (const auto* row : rows) at_event[row->eid] = &row->value;
      for (const auto* row : rows) {
        out.events[event_pos.at(row->eid)].attrs.insert_or_assign(attr, row->value);
      }
      if (sparse) continue;
      std::size_t start = event_pos.at(rows.front()->eid);
      const AttributeValue* current = &rows.front()->value;
      for (std::size_t i = start; i < out.events.size(); ++i) {
        Event& ev = out.events[i];
        auto change = at_event.find(ev.eid);
        if (change != at_event.end()) {
          current = change->second;
          continue;  // already written above
        }
        if (!std::binary_search(ev.objects.begin(), ev.objects.end(), oid, IdLess{})) continue;
        // Repetition needs an unambiguous owner among the referenced
        // instances of this type.
        std::size_t of_type = 0;
        for (const auto& ref : ev.objects) {
          auto obj = out.objects.find(ref);
          if (obj != out.objects.end() && obj->second.type == table.otype) ++of_type;
        }
        if (of_type != 1) continue;
        ev.attrs.insert_or_assign(attr, *current);
      }
    }
  }
  return out;
}

}  // namespace docel
