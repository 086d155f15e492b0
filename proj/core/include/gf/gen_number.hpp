#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

#include "gf/eps_grid.hpp"

namespace gf {

/// A generalized number: one complex value per grid parameter eps_k.
/// Immutable after construction; arithmetic is pointwise per eps.
class GenNumber {
public:
    using value_type = std::complex<double>;

    /// Throws std::invalid_argument if the value count differs from the
    /// grid size or any value is non-finite.
    GenNumber(EpsGrid grid, std::vector<value_type> values);

    /// Samples fn(eps_k) over the grid.
    static GenNumber from_function(const EpsGrid& grid,
                                   const std::function<value_type(double)>& fn);

    const EpsGrid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    value_type operator[](std::size_t k) const { return values_[k]; }
    const std::vector<value_type>& values() const { return values_; }

    /// True when every value has zero imaginary part.
    bool is_real() const;

private:
    EpsGrid grid_;
    std::vector<value_type> values_;
};

/// Pointwise sum / difference / product. Throw std::invalid_argument on
/// grid mismatch.
GenNumber gn_add(const GenNumber& u, const GenNumber& v);
GenNumber gn_sub(const GenNumber& u, const GenNumber& v);
GenNumber gn_mul(const GenNumber& u, const GenNumber& v);

inline GenNumber operator+(const GenNumber& u, const GenNumber& v) { return gn_add(u, v); }
inline GenNumber operator-(const GenNumber& u, const GenNumber& v) { return gn_sub(u, v); }
inline GenNumber operator*(const GenNumber& u, const GenNumber& v) { return gn_mul(u, v); }

/// CSV serialization: one "eps,re,im" row per grid point under a header.
void write_csv(std::ostream& os, const GenNumber& u);

/// Inverse of write_csv; throws std::runtime_error on malformed input.
GenNumber read_csv(std::istream& is);

}  // namespace gf
