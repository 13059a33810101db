#pragma once

#include "synd/exactalg/multipoly.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace synd {

/// Raised when a term violates a structural precondition (non-integer shift,
/// negative factorial argument, non-rational value, ...).
class TermError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// constant + sum of coefficient * symbol.
class LinearForm {
public:
    LinearForm() = default;
    explicit LinearForm(BigRational constant) : constant_(std::move(constant)) {}

    static LinearForm symbol(const std::string& name, BigRational coeff = 1)
    {
        LinearForm f;
        f.set(name, std::move(coeff));
        return f;
    }

    const BigRational& constant() const { return constant_; }
    const std::map<std::string, BigRational>& coefficients() const { return coeffs_; }

    BigRational coefficient(const std::string& name) const
    {
        auto it = coeffs_.find(name);
        return it == coeffs_.end() ? BigRational(0) : it->second;
    }

    void set(const std::string& name, BigRational c)
    {
        if (c == 0)
            coeffs_.erase(name);
        else
            coeffs_[name] = std::move(c);
    }

    bool is_constant() const { return coeffs_.empty(); }
    bool depends_on(const std::string& name) const { return coeffs_.count(name) != 0; }

    /// Constant integer value.
    bool is_integer_constant() const { return is_constant() && is_integer(constant_); }

    /// Same form with the constant dropped.
    LinearForm linear_part() const
    {
        LinearForm f = *this;
        f.constant_ = 0;
        return f;
    }

    LinearForm operator-() const { return *this * BigRational(-1); }

    friend LinearForm operator+(LinearForm a, const LinearForm& b)
    {
        a.constant_ += b.constant_;
        for (const auto& [s, c] : b.coeffs_)
            a.set(s, a.coefficient(s) + c);
        return a;
    }
    friend LinearForm operator-(const LinearForm& a, const LinearForm& b) { return a + (-b); }
    friend LinearForm operator+(LinearForm a, const BigRational& c)
    {
        a.constant_ += c;
        return a;
    }
    friend LinearForm operator-(LinearForm a, const BigRational& c)
    {
        a.constant_ -= c;
        return a;
    }
    friend LinearForm operator*(LinearForm a, const BigRational& c)
    {
        if (c == 0)
            return LinearForm();
        a.constant_ *= c;
        for (auto& [s, x] : a.coeffs_)
            x *= c;
        return a;
    }

    friend bool operator==(const LinearForm& a, const LinearForm& b)
    {
        return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator<(const LinearForm& a, const LinearForm& b)
    {
        if (a.coeffs_ != b.coeffs_)
            return a.coeffs_ < b.coeffs_;
        return a.constant_ < b.constant_;
    }

    /// Replaces assigned symbols by their values.
    template <typename Map>
    LinearForm substitute(const Map& values) const
    {
        LinearForm f(constant_);
        for (const auto& [s, c] : coeffs_) {
            auto it = values.find(s);
            if (it == values.end())
                f.set(s, c);
            else
                f.constant_ += c * it->second;
        }
        return f;
    }

    /// Shifts `name` by `delta`.
    LinearForm shifted(const std::string& name, const BigRational& delta) const
    {
        LinearForm f = *this;
        f.constant_ += coefficient(name) * delta;
        return f;
    }

    MultiPoly to_poly(const VarsPtr& vars) const
    {
        MultiPoly p = MultiPoly::constant(vars, constant_);
        for (const auto& [s, c] : coeffs_)
            p += MultiPoly::variable(vars, s) * c;
        return p;
    }

    /// Affine polynomial back to a form; throws if degree exceeds one.
    static LinearForm from_poly(const MultiPoly& p)
    {
        if (p.total_degree() > 1)
            throw TermError("expression is not affine: " + p.to_string());
        LinearForm f;
        for (const auto& t : p.terms()) {
            bool found = false;
            for (std::size_t i = 0; i < p.vars()->size(); ++i)
                if (t.exp[i] == 1) {
                    f.set((*p.vars())[i], t.coeff);
                    found = true;
                }
            if (!found)
                f.constant_ = t.coeff;
        }
        return f;
    }

    std::string to_string() const
    {
        std::string out;
        for (const auto& [s, c] : coeffs_) {
            BigRational a = abs(c);
            if (out.empty())
                out += c < 0 ? "-" : "";
            else
                out += c < 0 ? " - " : " + ";
            if (a != 1)
                out += a.get_str() + "*";
            out += s;
        }
        if (out.empty())
            return constant_.get_str();
        if (constant_ != 0)
            out += (constant_ < 0 ? " - " : " + ") + BigRational(abs(constant_)).get_str();
        return out;
    }

private:
    BigRational constant_ = 0;
    std::map<std::string, BigRational> coeffs_;
};

}  // namespace synd
