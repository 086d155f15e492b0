#include "gf/gen_number.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gf {

namespace {

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

GenNumber::GenNumber(EpsGrid grid, std::vector<value_type> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("GenNumber: value count does not match grid");
    for (const auto& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("GenNumber: values must be finite");
}

GenNumber GenNumber::from_function(const EpsGrid& grid,
                                   const std::function<value_type(double)>& fn) {
    std::vector<value_type> values(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        values[k] = fn(grid[k]);
    return GenNumber(grid, std::move(values));
}

bool GenNumber::is_real() const {
    for (const auto& v : values_)
        if (v.imag() != 0.0) return false;
    return true;
}

GenNumber gn_add(const GenNumber& u, const GenNumber& v) {
    if (u.grid() != v.grid())
        throw std::invalid_argument("gn_add: grid mismatch");
    std::vector<GenNumber::value_type> w(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) w[k] = u[k] + v[k];
    return GenNumber(u.grid(), std::move(w));
}

GenNumber gn_sub(const GenNumber& u, const GenNumber& v) {
    if (u.grid() != v.grid())
        throw std::invalid_argument("gn_sub: grid mismatch");
    std::vector<GenNumber::value_type> w(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) w[k] = u[k] - v[k];
    return GenNumber(u.grid(), std::move(w));
}

GenNumber gn_mul(const GenNumber& u, const GenNumber& v) {
    if (u.grid() != v.grid())
        throw std::invalid_argument("gn_mul: grid mismatch");
    std::vector<GenNumber::value_type> w(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) w[k] = u[k] * v[k];
    return GenNumber(u.grid(), std::move(w));
}

void write_csv(std::ostream& os, const GenNumber& u) {
    os << "eps,re,im\n";
    for (std::size_t k = 0; k < u.size(); ++k) {
        os << num17(u.grid()[k]) << ',' << num17(u[k].real()) << ','
           << num17(u[k].imag()) << '\n';
    }
}

GenNumber read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "eps,re,im")
        throw std::runtime_error("GenNumber CSV: missing 'eps,re,im' header");
    std::vector<double> eps;
    std::vector<GenNumber::value_type> values;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        double e = 0.0, re = 0.0, im = 0.0;
        char c1 = 0, c2 = 0;
        if (!(row >> e >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',')
            throw std::runtime_error("GenNumber CSV: malformed row '" + line + "'");
        eps.push_back(e);
        values.push_back({re, im});
    }
    return GenNumber(EpsGrid(std::move(eps)), std::move(values));
}

}  // namespace gf
