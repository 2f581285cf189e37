#include "invopt/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace invopt {
namespace {

const char* const kColumns[] = {
    "id",           "purchase_cost", "lead_time",    "size",
    "selling_price", "starting_stock", "demand_mean", "demand_std",
    "order_cost",   "holding_cost",  "stockout_probability", "demand_lead",
};
constexpr std::size_t kNumColumns = std::size(kColumns);

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

double parse_number(const std::string& cell, int row, const char* column) {
    const std::string t = trim(cell);
    double value = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || t.empty()) {
        throw CatalogError("row " + std::to_string(row) + ", column '" + column +
                           "': expected a number, got '" + cell + "'");
    }
    return value;
}

int parse_int(const std::string& cell, int row, const char* column) {
    const double v = parse_number(cell, row, column);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
        throw CatalogError("row " + std::to_string(row) + ", column '" + column +
                           "': expected an integer, got '" + cell + "'");
    }
    return i;
}

void check_product(const Product& p, const std::string& where) {
    auto fail = [&](const std::string& what) {
        throw CatalogError(where + ": " + what);
    };
    if (p.id.empty()) fail("id must be non-empty");
    if (p.purchase_cost < 0) fail("purchase_cost must be >= 0");
    if (p.lead_time < 1) fail("lead_time must be >= 1");
    if (p.size < 0) fail("size must be >= 0");
    if (p.selling_price < 0) fail("selling_price must be >= 0");
    if (p.starting_stock < 0) fail("starting_stock must be >= 0");
    if (p.demand_mean < 0) fail("demand_mean must be >= 0");
    if (p.demand_std < 0) fail("demand_std must be >= 0");
    if (p.order_cost < 0) fail("order_cost must be >= 0");
    if (p.holding_cost < 0) fail("holding_cost must be >= 0");
    if (p.stockout_probability < 0 || p.stockout_probability > 1)
        fail("stockout_probability must be within [0, 1]");
    if (p.demand_lead < 0) fail("demand_lead must be >= 0");
}

}  // namespace

// Shortest decimal form that parses back to the same double, so save/load
// round-trips are field-identical.
std::string format_number(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        double back = 0.0;
        std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
        if (back == v) break;
    }
    return buf;
}

ProductCatalog::ProductCatalog(std::vector<Product> products)
    : products_(std::move(products)) {
    if (products_.empty()) throw CatalogError("empty catalog");
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < products_.size(); ++i) {
        const Product& p = products_[i];
        check_product(p, "product " + std::to_string(i) + " (id '" + p.id + "')");
        if (!seen.insert(p.id).second)
            throw CatalogError("duplicate id '" + p.id + "'");
    }
}

ProductCatalog load_catalog(const std::filesystem::path& path,
                            std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalog file '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line)) throw CatalogError("empty catalog");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        const auto header = split_row(line);
        if (header.size() != kNumColumns)
            throw CatalogError("header has " + std::to_string(header.size()) +
                               " columns, expected " + std::to_string(kNumColumns));
        for (std::size_t c = 0; c < kNumColumns; ++c) {
            if (header[c] != kColumns[c])
                throw CatalogError("header column " + std::to_string(c + 1) +
                                   " is '" + header[c] + "', expected '" +
                                   kColumns[c] + "'");
        }
    }

    std::vector<Product> products;
    std::unordered_set<std::string> seen;
    int row = 1;  // header is row 1
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto cells = split_row(line);
        if (cells.size() != kNumColumns)
            throw CatalogError("row " + std::to_string(row) + " has " +
                               std::to_string(cells.size()) + " columns, expected " +
                               std::to_string(kNumColumns));
        Product p;
        p.id = cells[0];
        p.purchase_cost = parse_number(cells[1], row, "purchase_cost");
        p.lead_time = parse_int(cells[2], row, "lead_time");
        p.size = parse_number(cells[3], row, "size");
        p.selling_price = parse_number(cells[4], row, "selling_price");
        p.starting_stock = parse_number(cells[5], row, "starting_stock");
        p.demand_mean = parse_number(cells[6], row, "demand_mean");
        p.demand_std = parse_number(cells[7], row, "demand_std");
        p.order_cost = parse_number(cells[8], row, "order_cost");
        p.holding_cost = parse_number(cells[9], row, "holding_cost");
        p.stockout_probability = parse_number(cells[10], row, "stockout_probability");
        p.demand_lead = parse_number(cells[11], row, "demand_lead");

        check_product(p, "row " + std::to_string(row) + " (id '" + p.id + "')");
        if (!seen.insert(p.id).second)
            throw CatalogError("duplicate id '" + p.id + "' at row " +
                               std::to_string(row));
        products.push_back(std::move(p));
    }
    if (products.empty()) throw CatalogError("empty catalog");

    if (warnings) {
        for (const Product& p : products) {
            const double expected = p.demand_mean * p.lead_time;
            if (expected <= 0.0) continue;
            const double drift = std::abs(p.demand_lead - expected) / expected;
            if (drift > 0.02) {
                char buf[160];
                std::snprintf(buf, sizeof buf,
                              "product '%s': demand_lead %g deviates %.1f%% from "
                              "demand_mean*lead_time %g",
                              p.id.c_str(), p.demand_lead, drift * 100.0, expected);
                warnings->push_back(buf);
            }
        }
    }
    return ProductCatalog(std::move(products));
}

void save_catalog(const ProductCatalog& catalog, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw CatalogError("cannot write catalog file '" + path.string() + "'");
    out << kCatalogHeader << '\n';
    for (const Product& p : catalog) {
        out << p.id << ',' << format_number(p.purchase_cost) << ',' << p.lead_time
            << ',' << format_number(p.size) << ',' << format_number(p.selling_price)
            << ',' << format_number(p.starting_stock) << ','
            << format_number(p.demand_mean) << ',' << format_number(p.demand_std)
            << ',' << format_number(p.order_cost) << ','
            << format_number(p.holding_cost) << ','
            << format_number(p.stockout_probability) << ','
            << format_number(p.demand_lead) << '\n';
    }
}

ProductCatalog builtin_catalog() {
    std::vector<Product> p(4);
    p[0] = {"A", 12.0, 9, 0.57, 16.10, 2750.0, 103.50, 37.32, 1000.0, 20.0, 0.76, 705.0};
    p[1] = {"B", 7.0, 6, 0.05, 8.60, 22500.0, 648.55, 26.45, 1200.0, 20.0, 1.00, 3891.0};
    p[2] = {"C", 6.0, 15, 0.53, 10.20, 5200.0, 201.68, 31.08, 1000.0, 20.0, 0.70, 2266.0};
    p[3] = {"D", 37.0, 12, 1.05, 68.0, 1400.0, 150.06, 3.21, 1200.0, 20.0, 0.23, 785.0};
    return ProductCatalog(std::move(p));
}

}  // namespace invopt
