#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "error.hpp"

namespace fock_hausdorff {

using Complex = std::complex<double>;

namespace detail {

// Plain complex product; skips the Annex G inf/nan recovery of operator*.
inline Complex cmul(Complex a, Complex b) noexcept
{
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

} // namespace detail

//
// Truncated entire function a_0 + a_1 z + ... + a_d z^d.
//
// Trailing zero coefficients are stripped on construction; the zero
// polynomial is stored as the single coefficient 0 (degree 0).
//
class TaylorPolynomial
{
public:
    TaylorPolynomial()
        : coeffs_{Complex{0.0, 0.0}}
    {}

    explicit TaylorPolynomial(std::vector<Complex> coeffs)
        : coeffs_(std::move(coeffs))
    {
        while (coeffs_.size() > 1 && coeffs_.back() == Complex{0.0, 0.0})
            coeffs_.pop_back();
        if (coeffs_.empty())
            coeffs_.push_back({0.0, 0.0});
    }

    static TaylorPolynomial monomial(std::size_t n, Complex c = 1.0)
    {
        std::vector<Complex> v(n + 1, Complex{0.0, 0.0});
        v[n] = c;
        return TaylorPolynomial(std::move(v));
    }

    std::size_t              degree() const noexcept { return coeffs_.size() - 1; }
    std::span<const Complex> coefficients() const noexcept { return coeffs_; }
    bool                     is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == Complex{}; }

    Complex operator[](std::size_t n) const noexcept { return n < coeffs_.size() ? coeffs_[n] : Complex{}; }

    // Horner.
    Complex operator()(Complex z) const noexcept
    {
        Complex acc = coeffs_.back();
        for (std::size_t k = coeffs_.size() - 1; k-- > 0;)
            acc = detail::cmul(acc, z) + coeffs_[k];
        return acc;
    }

    // c·f
    TaylorPolynomial scaled(Complex c) const
    {
        std::vector<Complex> v(coeffs_.begin(), coeffs_.end());
        for (auto & a : v)
            a *= c;
        return TaylorPolynomial(std::move(v));
    }

    // z ↦ f(e^{iφ} z)
    TaylorPolynomial rotated(double phi) const
    {
        std::vector<Complex> v(coeffs_.begin(), coeffs_.end());
        for (std::size_t n = 0; n < v.size(); ++n)
            v[n] *= std::polar(1.0, phi * static_cast<double>(n));
        return TaylorPolynomial(std::move(v));
    }

    friend bool operator==(const TaylorPolynomial &, const TaylorPolynomial &) = default;

private:
    std::vector<Complex> coeffs_;
};

inline Complex evaluate(const TaylorPolynomial & f, Complex z) noexcept
{
    return f(z);
}

//
// Polynomial documents: JSON array of [re, im] pairs, index = power.
//

inline TaylorPolynomial parse_polynomial(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error & e) {
        throw ParseError("byte " + std::to_string(e.byte), "malformed JSON");
    }
    if (!j.is_array())
        throw ParseError("/", "expected an array of [re, im] pairs");
    std::vector<Complex> c;
    for (std::size_t n = 0; n < j.size(); ++n) {
        const auto & e = j[n];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw ParseError("/" + std::to_string(n), "expected a [re, im] pair of numbers");
        c.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return TaylorPolynomial(std::move(c));
}

template <typename Json = nlohmann::ordered_json>
Json polynomial_to_json(const TaylorPolynomial & f)
{
    Json j = Json::array();
    for (const Complex & a : f.coefficients())
        j.push_back(Json::array({a.real(), a.imag()}));
    return j;
}

} // namespace fock_hausdorff
