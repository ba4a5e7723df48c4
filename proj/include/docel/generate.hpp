#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "docel/model.hpp"

namespace docel {

struct GapMinutes {
  std::int64_t min_minutes = 1;
  std::int64_t max_minutes = 2880;
};

Timestamp default_start_time();

// Order-to-delivery process. Object types Customer, Order, Item, Packages,
// Product Type; dynamic attributes Customer Address (per customer) and
// Weight, Order Price (per order). One fresh customer per order.
struct O2DParams {
  std::int64_t num_orders = 100;
  std::int64_t max_products = 20;  // catalog size
  std::int64_t max_items = 80;     // per order
  double p_remove_item = 0.3;
  double p_change_address = 0.3;
  double p_fail_delivery = 0.02;
  Timestamp start_time = default_start_time();
  GapMinutes inter_event_gap;
  std::uint64_t seed = 1;
};

// Shipping-method process. Object types Customers, Orders, Product Type;
// dynamic attributes Value, Refund, Shipping Method (all per order); every
// event carries a Resource attribute drawn from resource_pool. Customers
// are reused across orders, so customer-vs-order ambiguity is resolvable
// from relations.
struct ShipParams {
  std::int64_t num_orders = 100;
  std::int64_t num_customers = 50;
  std::int64_t num_products = 3;  // catalog size
  std::int64_t value_threshold = 100;
  double p_refund = 0.3;
  std::vector<std::string> resource_pool = default_resource_pool();
  Timestamp start_time = default_start_time();
  GapMinutes inter_event_gap;
  std::uint64_t seed = 1;

  static std::vector<std::string> default_resource_pool();
};

DocelLog generate_order_to_delivery(const O2DParams& p);
DocelLog generate_shipping_method(const ShipParams& p);

// Degrades DOCEL to OCEL: every dynamic row becomes an event attribute on
// its event, and (unless sparse) the current value is repeated on every
// later event that references the owning object.
OcelLog flatten_to_ocel(const DocelLog& gold, bool sparse = false);

}  // namespace docel
