#include "tincalc/scalar.hpp"

#include <cctype>
#include <cmath>

#include "tincalc/errors.hpp"

namespace tincalc {
namespace {

Integer pow10(long exponent) {
  Integer result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, static_cast<unsigned long>(exponent));
  return result;
}

// value * 10^k as an exact rational, k may be negative.
Scalar scale10(const Scalar& value, long k) {
  if (k >= 0) return value * Scalar(pow10(k));
  return value / Scalar(pow10(-k));
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer round_half_even(const Scalar& x) {
  Integer floor_part;
  mpz_fdiv_q(floor_part.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Scalar frac = x - Scalar(floor_part);
  int c = cmp(frac, Scalar(1, 2));
  if (c > 0 || (c == 0 && mpz_odd_p(floor_part.get_mpz_t()))) floor_part += 1;
  return floor_part;
}

// Decimal exponent estimate of a positive rational, exact to within +-1.
long log10_estimate(const Scalar& x) {
  long bits = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
              static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
  return static_cast<long>(std::floor(static_cast<double>(bits) * 0.30102999566398120));
}

std::string format_mantissa(const Integer& mantissa, long exponent, bool negative,
                            int digits) {
  std::string m = mantissa.get_str();
  std::string out = negative ? "-" : "";
  if (exponent < -4 || exponent >= digits) {
    std::string frac = m.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out += m.substr(0, 1);
    if (!frac.empty()) out += "." + frac;
    out += (exponent < 0 ? "e-" : "e+");
    std::string e = std::to_string(std::labs(exponent));
    if (e.size() < 2) e = "0" + e;
    return out + e;
  }
  std::string int_part;
  std::string frac_part;
  if (exponent >= 0) {
    int_part = m.substr(0, static_cast<std::size_t>(exponent) + 1);
    frac_part = m.substr(static_cast<std::size_t>(exponent) + 1);
  } else {
    int_part = "0";
    frac_part = std::string(static_cast<std::size_t>(-exponent - 1), '0') + m;
  }
  while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
  out += int_part;
  if (!frac_part.empty()) out += "." + frac_part;
  return out;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) throw ParseError("empty number");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits[0] == '-' || num_digits[0] == '+'))
      num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    Integer n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
    Integer d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Scalar q(n, d);
    q.canonicalize();
    return q;
  }

  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text[0] == '-' || exp_text[0] == '+')) {
      exp_negative = exp_text[0] == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6)
      throw ParseError("malformed exponent in '" + std::string(text) + "'");
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty())
    throw ParseError("malformed number '" + std::string(text) + "'");
  if ((!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part)))
    throw ParseError("malformed number '" + std::string(text) + "'");

  std::string digits = std::string(int_part) + std::string(frac_part);
  Integer mantissa(digits.empty() ? std::string("0") : digits, 10);
  if (negative) mantissa = -mantissa;
  Scalar q = scale10(Scalar(mantissa), exponent - static_cast<long>(frac_part.size()));
  q.canonicalize();
  return q;
}

std::string to_string(const Scalar& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Scalar& value, int digits) {
  if (digits < 1) throw InvalidParameter("digits must be positive");
  if (value == 0) return "0";
  const bool negative = value < 0;
  const Scalar x = abs(value);
  const Integer lo = pow10(digits - 1);
  const Integer hi = pow10(digits);

  long e = log10_estimate(x);
  for (;;) {
    Scalar scaled = scale10(x, digits - 1 - e);
    if (scaled < Scalar(lo)) {
      --e;
    } else if (scaled >= Scalar(hi)) {
      ++e;
    } else {
      break;
    }
  }
  Integer m = round_half_even(scale10(x, digits - 1 - e));
  if (m == hi) {
    m = lo;
    ++e;
  }
  return format_mantissa(m, e, negative, digits);
}

std::string sqrt_decimal(const Scalar& value, int digits) {
  if (value < 0) throw InvalidParameter("square root of a negative value");
  if (digits < 1) throw InvalidParameter("digits must be positive");
  if (value == 0) return "0";
  const Integer lo = pow10(digits - 1);
  const Integer hi = pow10(digits);
  const Scalar lo2(lo * lo);
  const Scalar hi2(hi * hi);

  // sqrt(value) * 10^k must land in [10^(digits-1), 10^digits).
  long e = log10_estimate(value) / 2;
  Scalar scaled;
  for (;;) {
    scaled = scale10(value, 2 * (digits - 1 - e));
    if (scaled < lo2) {
      --e;
    } else if (scaled >= hi2) {
      ++e;
    } else {
      break;
    }
  }
  Integer floor_scaled;
  mpz_fdiv_q(floor_scaled.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Integer root;
  mpz_sqrt(root.get_mpz_t(), floor_scaled.get_mpz_t());
  // Compare sqrt(scaled) with root + 1/2, i.e. scaled with root^2 + root + 1/4.
  Scalar midpoint_sq = Scalar(root * root + root) + Scalar(1, 4);
  int c = cmp(scaled, midpoint_sq);
  if (c > 0 || (c == 0 && mpz_odd_p(root.get_mpz_t()))) root += 1;
  if (root == hi) {
    root = lo;
    ++e;
  }
  return format_mantissa(root, e, false, digits);
}

std::size_t bit_size(const Scalar& value) {
  return mpz_sizeinbase(value.get_num_mpz_t(), 2) + mpz_sizeinbase(value.get_den_mpz_t(), 2);
}

Scalar sum_exact(std::vector<Scalar> values) {
  if (values.empty()) return 0;
  while (values.size() > 1) {
    std::size_t w = 0;
    for (std::size_t i = 0; i + 1 < values.size(); i += 2) values[w++] = values[i] + values[i + 1];
    if (values.size() % 2) values[w++] = std::move(values.back());
    values.resize(w);
  }
  return values[0];
}

}  // namespace tincalc
