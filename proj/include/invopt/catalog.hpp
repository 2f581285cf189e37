#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace invopt {

// One row of the product master data. Costs are per unit, lead_time in days.
// demand_mean / demand_std describe daily demand; demand_lead is the expected
// demand over one lead time and is what the ABC classification consumes.
struct Product {
    std::string id;
    double purchase_cost = 0.0;
    int lead_time = 1;
    double size = 0.0;
    double selling_price = 0.0;
    double starting_stock = 0.0;
    double demand_mean = 0.0;
    double demand_std = 0.0;
    double order_cost = 0.0;
    double holding_cost = 0.0;
    double stockout_probability = 0.0;
    double demand_lead = 0.0;
};

class CatalogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Validated, immutable product list. Element order is stable and defines the
// product index used by decision vectors, policies and demand streams.
class ProductCatalog {
public:
    // Throws CatalogError on an empty list, a duplicate id, or any product
    // violating: costs/size/demand fields >= 0, lead_time >= 1,
    // stockout_probability in [0, 1].
    explicit ProductCatalog(std::vector<Product> products);

    std::size_t size() const { return products_.size(); }
    const Product& operator[](std::size_t i) const { return products_[i]; }
    const std::vector<Product>& products() const { return products_; }

    auto begin() const { return products_.begin(); }
    auto end() const { return products_.end(); }

private:
    std::vector<Product> products_;
};

inline constexpr char kCatalogHeader[] =
    "id,purchase_cost,lead_time,size,selling_price,starting_stock,demand_mean,"
    "demand_std,order_cost,holding_cost,stockout_probability,demand_lead";

// Loads a catalog from CSV with the exact kCatalogHeader column set.
// Malformed input raises CatalogError naming the offending row/column.
// If `warnings` is non-null, consistency notes are appended: demand_lead
// drifting more than 2% from demand_mean * lead_time is reported (not fatal).
ProductCatalog load_catalog(const std::filesystem::path& path,
                            std::vector<std::string>* warnings = nullptr);

// Writes a catalog that load_catalog reads back field-identically.
void save_catalog(const ProductCatalog& catalog, const std::filesystem::path& path);

// Four-product sample dataset wired to the CLI's `--catalog builtin`.
ProductCatalog builtin_catalog();

// Shortest decimal string that parses back to exactly `v`; used by every CSV
// writer so that repeated runs emit identical bytes.
std::string format_number(double v);

}  // namespace invopt
