// Copyright 2026 The relsurf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>

#include "domains_internal.h"
#include "relsurf/result_text.h"

namespace relsurf::internal {
namespace {

std::string Upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

int Stock(const EcommerceState& s, const std::string& sku) {
  auto it = s.inventory.find(sku);
  return it == s.inventory.end() ? 0 : it->second;
}

std::string SearchProducts(const EcommerceState& s, const ToolArgs& args) {
  const std::string query = Lower(ArgStr(args, "query"));
  const std::string category = Lower(ArgStr(args, "category"));
  const auto min_price = ArgNum(args, "min_price");
  const auto max_price = ArgNum(args, "max_price");
  std::vector<const ProductRec*> hits;
  for (const auto& p : s.catalog) {
    if (!category.empty() && Lower(p.category) != category) continue;
    if (min_price && p.price < *min_price) continue;
    if (max_price && p.price > *max_price) continue;
    if (!query.empty()) {
      const std::string hay = Lower(p.sku + " " + p.name + " " + p.category);
      bool all = true;
      std::size_t pos = 0;
      while (pos < query.size()) {
        std::size_t end = query.find(' ', pos);
        if (end == std::string::npos) end = query.size();
        if (end > pos && hay.find(query.substr(pos, end - pos)) == std::string::npos) {
          all = false;
          break;
        }
        pos = end + 1;
      }
      if (!all) continue;
    }
    hits.push_back(&p);
  }
  std::sort(hits.begin(), hits.end(),
            [](const ProductRec* a, const ProductRec* b) { return a->sku < b->sku; });
  ResultBuilder b("products", "search");
  b.Add("count", static_cast<long long>(hits.size()));
  for (const ProductRec* p : hits) {
    b.Row()
        .Add("sku", p->sku)
        .Add("name", p->name)
        .Add("category", p->category)
        .AddAmount("price", p->price)
        .Add("stock", static_cast<long long>(Stock(s, p->sku)));
  }
  return b.str();
}

std::string CheckInventory(const EcommerceState& s, const ToolArgs& args) {
  const std::string sku = Upper(ArgStr(args, "sku"));
  const ProductRec* p = s.FindProduct(sku);
  if (!p) return ResultBuilder("error", "unknown_sku").Add("sku", sku).str();
  return ResultBuilder("inventory", "sku")
      .Add("sku", sku)
      .Add("name", p->name)
      .AddAmount("price", p->price)
      .Add("stock", static_cast<long long>(Stock(s, sku)))
      .str();
}

std::string CreateOrder(EcommerceState& s, const ToolArgs& args) {
  const std::string customer = ArgStr(args, "customer_id");
  const std::string address = ArgStr(args, "shipping_address");
  const std::string coupon_code = Upper(ArgStr(args, "coupon_code"));
  if (customer.empty()) return ErrorText("create_order", "customer_id required");
  if (address.empty()) return ErrorText("create_order", "shipping_address required");
  const auto& items = args.at("items");
  if (items.empty()) return ErrorText("create_order", "items must not be empty");

  OrderRec o;
  std::map<std::string, int> wanted;
  for (const auto& item : items) {
    const std::string sku = Upper(ArgStr(item, "sku"));
    std::optional<double> qty = ArgNum(item, "qty");
    if (!qty) qty = ArgNum(item, "quantity");
    if (sku.empty()) return ErrorText("create_order", "item without sku");
    if (!qty || *qty < 1 || std::floor(*qty) != *qty || *qty > 1e6) {
      return ResultBuilder("error", "bad_quantity").Add("sku", sku).str();
    }
    const ProductRec* p = s.FindProduct(sku);
    if (!p) return ResultBuilder("error", "unknown_sku").Add("sku", sku).str();
    const int n = static_cast<int>(*qty);
    wanted[sku] += n;
    o.lines.push_back({sku, n, p->price, false});
    o.subtotal += n * p->price;
  }
  for (const auto& [sku, n] : wanted) {
    if (Stock(s, sku) < n) {
      return ResultBuilder("error", "insufficient_stock")
          .Add("sku", sku)
          .Add("stock", static_cast<long long>(Stock(s, sku)))
          .str();
    }
  }
  o.subtotal = RoundCents(o.subtotal);
  if (!coupon_code.empty()) {
    auto c = s.coupons.find(coupon_code);
    if (c == s.coupons.end()) {
      return ResultBuilder("error", "invalid_coupon").Add("code", coupon_code).str();
    }
    if (o.subtotal < c->second.min_subtotal) {
      return ResultBuilder("error", "below_minimum")
          .Add("code", coupon_code)
          .AddAmount("min_subtotal", c->second.min_subtotal)
          .str();
    }
    o.coupon_code = coupon_code;
    o.discount_pct = c->second.discount_pct;
    o.discount = RoundCents(o.subtotal * o.discount_pct / 100.0);
  }
  o.total = RoundCents(o.subtotal - o.discount);
  o.order_id = "O-" + std::to_string(s.next_order_seq++);
  o.customer_id = customer;
  o.shipping_address = address;
  for (const auto& [sku, n] : wanted) s.inventory[sku] -= n;
  s.orders[o.order_id] = o;
  return ResultBuilder("ok", "ordered")
      .Add("order_id", o.order_id)
      .Add("customer_id", customer)
      .Add("items", static_cast<long long>(o.lines.size()))
      .AddAmount("subtotal", o.subtotal)
      .AddAmount("discount", o.discount)
      .AddAmount("total", o.total)
      .Add("status", ToString(o.status))
      .str();
}

const OrderRec* FindOrder(const EcommerceState& s, const std::string& id) {
  auto it = s.orders.find(Upper(id));
  return it == s.orders.end() ? nullptr : &it->second;
}

std::string CheckOrderStatus(const EcommerceState& s, const ToolArgs& args) {
  const std::string id = ArgStr(args, "order_id");
  const OrderRec* o = FindOrder(s, id);
  if (!o) return ResultBuilder("error", "not_found").Add("order_id", id).str();
  ResultBuilder b("order", "status");
  b.Add("order_id", o->order_id)
      .Add("customer_id", o->customer_id)
      .Add("status", ToString(o->status))
      .AddAmount("subtotal", o->subtotal)
      .AddAmount("discount", o->discount)
      .AddAmount("total", o->total)
      .Add("shipping_address", o->shipping_address)
      .Add("coupon", o->coupon_code);
  for (const auto& l : o->lines) {
    b.Row()
        .Add("sku", l.sku)
        .Add("qty", static_cast<long long>(l.qty))
        .AddAmount("unit_price", l.unit_price)
        .Add("returned", l.returned ? "yes" : "no");
  }
  return b.str();
}

std::string ProcessReturn(EcommerceState& s, const ToolArgs& args) {
  const std::string id = ArgStr(args, "order_id");
  auto it = s.orders.find(Upper(id));
  if (it == s.orders.end()) return ResultBuilder("error", "not_found").Add("order_id", id).str();
  OrderRec& o = it->second;
  const auto& items = args.at("items");
  if (items.empty()) return ErrorText("process_return", "items must not be empty");
  std::vector<std::size_t> lines;
  for (const auto& item : items) {
    const std::string sku = Upper(TrimCopy(item.get<std::string>()));
    auto line = std::find_if(o.lines.begin(), o.lines.end(), [&](const OrderLine& l) {
      return l.sku == sku && !l.returned &&
             std::find(lines.begin(), lines.end(),
                       static_cast<std::size_t>(&l - o.lines.data())) == lines.end();
    });
    if (line == o.lines.end()) {
      return ResultBuilder("error", "not_returnable").Add("sku", sku).str();
    }
    lines.push_back(static_cast<std::size_t>(line - o.lines.begin()));
  }
  double refund = 0;
  for (std::size_t i : lines) {
    OrderLine& l = o.lines[i];
    l.returned = true;
    s.inventory[l.sku] += l.qty;
    refund += l.qty * l.unit_price;
  }
  refund = RoundCents(refund * (1.0 - o.discount_pct / 100.0));
  const bool all = std::all_of(o.lines.begin(), o.lines.end(),
                               [](const OrderLine& l) { return l.returned; });
  o.status = all ? OrderStatus::kReturned : OrderStatus::kPartiallyReturned;
  o.return_reason = ArgStr(args, "reason");
  o.refund_method = ArgStr(args, "refund_method");
  return ResultBuilder("ok", "returned")
      .Add("order_id", o.order_id)
      .Add("items", static_cast<long long>(lines.size()))
      .AddAmount("refund", refund)
      .Add("status", ToString(o.status))
      .str();
}

std::string ApplyCoupon(const EcommerceState& s, const ToolArgs& args) {
  const std::string code = Upper(ArgStr(args, "code"));
  const double subtotal = ArgNum(args, "order_subtotal").value_or(0.0);
  if (subtotal < 0) return ErrorText("apply_coupon", "order_subtotal must be >= 0");
  auto c = s.coupons.find(code);
  if (c == s.coupons.end()) {
    return ResultBuilder("error", "invalid_coupon").Add("code", code).str();
  }
  if (subtotal < c->second.min_subtotal) {
    return ResultBuilder("error", "below_minimum")
        .Add("code", code)
        .AddAmount("min_subtotal", c->second.min_subtotal)
        .str();
  }
  const double discount = RoundCents(subtotal * c->second.discount_pct / 100.0);
  return ResultBuilder("coupon", "valid")
      .Add("code", code)
      .AddAmount("discount_pct", c->second.discount_pct)
      .AddAmount("subtotal", subtotal)
      .AddAmount("discount", discount)
      .AddAmount("total", RoundCents(subtotal - discount))
      .str();
}

// --- suite -------------------------------------------------------------------

struct ProductSeed {
  std::string name;
  std::string category;
};

const std::vector<ProductSeed> kProducts = {
    {"Wireless Mouse", "electronics"}, {"USB-C Cable", "electronics"},
    {"Noise Cancelling Headphones", "electronics"}, {"Webcam", "electronics"},
    {"Desk Lamp", "home"}, {"Ceramic Mug", "home"}, {"Throw Blanket", "home"},
    {"Wall Clock", "home"}, {"Running Shoes", "sports"}, {"Yoga Mat", "sports"},
    {"Water Bottle", "sports"}, {"Tennis Balls", "sports"},
};

const std::vector<std::string> kStreets = {"Oak Street", "Pine Avenue", "Maple Road",
                                           "Cedar Lane", "Elm Drive", "Birch Court"};
const std::vector<std::string> kCities = {"Springfield", "Riverton", "Lakeside", "Fairview"};

std::string Customer(Rng& rng) { return "C-" + std::to_string(1000 + rng.Below(9000)); }

std::string Address(Rng& rng) {
  return std::to_string(10 + rng.Below(90)) + " " + Pick(rng, kStreets) + ", " +
         Pick(rng, kCities);
}

EcommerceState BaseState(Rng& rng) {
  EcommerceState s;
  auto prices = Sample(rng, 60, kProducts.size());
  for (std::size_t i = 0; i < kProducts.size(); ++i) {
    const std::string sku = "SKU-" + std::to_string(101 + i);
    s.catalog.push_back({sku, kProducts[i].name, kProducts[i].category,
                         static_cast<double>(15 + 5 * prices[i])});
    s.inventory[sku] = static_cast<int>(3 + rng.Below(20));
  }
  s.coupons = {{"SAVE10", {10, 0}}, {"WELCOME5", {5, 0}}, {"BIG20", {20, 200}}};
  return s;
}

TaskSpec OrderTask(std::string id, Rng& rng) {
  EcommerceState s = BaseState(rng);
  const ProductRec& p = s.catalog[rng.Below(s.catalog.size())];
  const int qty = 2 + static_cast<int>(rng.Below(3));
  s.inventory[p.sku] = std::max(s.inventory[p.sku], qty + 1);
  const std::string customer = Customer(rng);
  const std::string address = Address(rng);
  const std::string sku = p.sku;
  TaskSpec t;
  t.task_id = std::move(id);
  t.domain = Domain::kEcommerce;
  t.complexity = Complexity::kL1;
  t.description = "Order " + std::to_string(qty) + " units of " + sku + " for customer " +
                  customer + " with shipping to " + address + ".";
  t.initial_state = std::move(s);
  t.verifier_id = "ecom_order";
  t.verifier_params = {{"customer_id", customer},
                       {"sku", sku},
                       {"qty", std::to_string(qty)},
                       {"address", address}};
  t.goal_meta = {"ecom_order",
                 {{"qty", EntityKind::kNumber, std::to_string(qty)},
                  {"sku", EntityKind::kId, sku},
                  {"customer_id", EntityKind::kId, customer},
                  {"address", EntityKind::kText, address}}};
  return t;
}

TaskSpec CheapestCouponTask(std::string id, Rng& rng) {
  EcommerceState s = BaseState(rng);
  const std::string category =
      Pick(rng, std::vector<std::string>{"electronics", "home", "sports"});
  // The cheapest product of the category is out of stock, so "in-stock"
  // changes the answer.
  const ProductRec* cheapest = nullptr;
  for (const auto& p : s.catalog) {
    if (p.category == category && (!cheapest || p.price < cheapest->price)) cheapest = &p;
  }
  s.inventory[cheapest->sku] = 0;
  const std::string customer = Customer(rng);
  const std::string address = Address(rng);
  TaskSpec t;
  t.task_id = std::move(id);
  t.domain = Domain::kEcommerce;
  t.complexity = Complexity::kL2;
  t.description = "Order 1 unit of the cheapest in-stock " + category +
                  " product for customer " + customer + " with shipping to " + address +
                  ", and apply the coupon SAVE10.";
  t.initial_state = std::move(s);
  t.verifier_id = "ecom_cheapest_coupon";
  t.verifier_params = {{"customer_id", customer},
                       {"category", category},
                       {"coupon", "SAVE10"},
                       {"address", address}};
  t.goal_meta = {"ecom_cheapest_coupon",
                 {{"category", EntityKind::kText, category},
                  {"customer_id", EntityKind::kId, customer},
                  {"address", EntityKind::kText, address},
                  {"coupon", EntityKind::kCode, "SAVE10"}}};
  return t;
}

}  // namespace

std::string ApplyEcommerce(EcommerceState& s, std::string_view tool, const ToolArgs& args) {
  if (tool == "search_products") return SearchProducts(s, args);
  if (tool == "check_inventory") return CheckInventory(s, args);
  if (tool == "create_order") return CreateOrder(s, args);
  if (tool == "check_order_status") return CheckOrderStatus(s, args);
  if (tool == "process_return") return ProcessReturn(s, args);
  if (tool == "apply_coupon") return ApplyCoupon(s, args);
  return ResultBuilder("error", "unknown_tool").Add("name", tool).str();
}

std::vector<TaskSpec> EcommerceSuite(Rng& rng) {
  std::vector<TaskSpec> out;
  out.push_back(OrderTask("ecom-1", rng));
  out.push_back(CheapestCouponTask("ecom-2", rng));
  out.push_back(OrderTask("ecom-3", rng));
  out.push_back(CheapestCouponTask("ecom-4", rng));
  out.push_back(OrderTask("ecom-5", rng));
  return out;
}

}  // namespace relsurf::internal
