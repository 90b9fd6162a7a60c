#ifndef CONTACT_SPECTRA_NILPOTENT_SERIES_HPP
#define CONTACT_SPECTRA_NILPOTENT_SERIES_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace contact_spectra {

/// Truncated polynomial in a degree-2 class c that is nilpotent above
/// degree 2k-1: coefficients c_0 .. c_{2k-1}, products drop everything
/// beyond. This replaces differential-form arithmetic exactly, since every
/// pairing in sight has finite degree.
class NilpotentSeries {
public:
    using value_type = std::complex<double>;

    explicit NilpotentSeries(std::size_t order) : coeff_(order, value_type(0.0)) {
        if (order == 0) throw std::invalid_argument("NilpotentSeries: order must be >= 1");
    }
    NilpotentSeries(std::initializer_list<value_type> init) : coeff_(init) {
        if (coeff_.empty()) throw std::invalid_argument("NilpotentSeries: empty");
    }

    static NilpotentSeries constant(std::size_t order, value_type a) {
        NilpotentSeries s(order);
        s.coeff_[0] = a;
        return s;
    }
    /// a + b*c
    static NilpotentSeries linear(std::size_t order, value_type a, value_type b) {
        NilpotentSeries s(order);
        s.coeff_[0] = a;
        if (order > 1) s.coeff_[1] = b;
        return s;
    }

    std::size_t order() const { return coeff_.size(); }
    value_type operator[](std::size_t i) const { return i < coeff_.size() ? coeff_[i] : 0.0; }
    value_type& at(std::size_t i) { return coeff_.at(i); }

    NilpotentSeries& operator+=(const NilpotentSeries& o) {
        check_order(o);
        for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += o.coeff_[i];
        return *this;
    }
    NilpotentSeries& operator-=(const NilpotentSeries& o) {
        check_order(o);
        for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= o.coeff_[i];
        return *this;
    }
    NilpotentSeries& operator*=(value_type a) {
        for (auto& ci : coeff_) ci *= a;
        return *this;
    }

    friend NilpotentSeries operator+(NilpotentSeries a, const NilpotentSeries& b) { return a += b; }
    friend NilpotentSeries operator-(NilpotentSeries a, const NilpotentSeries& b) { return a -= b; }
    friend NilpotentSeries operator*(NilpotentSeries a, value_type s) { return a *= s; }
    friend NilpotentSeries operator*(value_type s, NilpotentSeries a) { return a *= s; }

    friend NilpotentSeries operator*(const NilpotentSeries& a, const NilpotentSeries& b) {
        a.check_order(b);
        NilpotentSeries out(a.order());
        for (std::size_t i = 0; i < a.order(); ++i) {
            if (a.coeff_[i] == value_type(0.0)) continue;
            for (std::size_t j = 0; i + j < a.order(); ++j)
                out.coeff_[i + j] += a.coeff_[i] * b.coeff_[j];
        }
        return out;
    }

    /// exp of the series; the nilpotent part makes the Taylor sum finite and
    /// the constant part factors out through std::exp.
    NilpotentSeries exp() const {
        NilpotentSeries nil = *this;
        const value_type a0 = nil.coeff_[0];
        nil.coeff_[0] = 0.0;
        NilpotentSeries out = constant(order(), 1.0);
        NilpotentSeries pow = constant(order(), 1.0);
        double fact = 1.0;
        for (std::size_t j = 1; j < order(); ++j) {
            pow = pow * nil;
            fact *= static_cast<double>(j);
            out += pow * value_type(1.0 / fact);
        }
        return out * std::exp(a0);
    }

    /// 1 / (a + nilpotent): geometric series, requires a != 0.
    NilpotentSeries reciprocal() const {
        const value_type a0 = coeff_[0];
        if (a0 == value_type(0.0))
            throw std::domain_error("NilpotentSeries: reciprocal of zero constant term");
        NilpotentSeries nil = *this;
        nil.coeff_[0] = 0.0;
        nil *= value_type(1.0) / a0;
        NilpotentSeries out = constant(order(), 1.0);
        NilpotentSeries pow = constant(order(), 1.0);
        double sign = 1.0;
        for (std::size_t j = 1; j < order(); ++j) {
            pow = pow * nil;
            sign = -sign;
            out += pow * value_type(sign);
        }
        return out * (value_type(1.0) / a0);
    }

private:
    void check_order(const NilpotentSeries& o) const {
        if (o.coeff_.size() != coeff_.size())
            throw std::invalid_argument("NilpotentSeries: mixed truncation orders");
    }
    std::vector<value_type> coeff_;
};

} // namespace contact_spectra

#endif
