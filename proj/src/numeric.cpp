#include "lipfrac/numeric.hpp"

#include <algorithm>
#include <cctype>

namespace lipfrac {

const char *error_name(ErrorCode c) {
  switch (c) {
  case ErrorCode::EmptyInput: return "EmptyInput";
  case ErrorCode::InvalidInput: return "InvalidInput";
  case ErrorCode::ParseError: return "ParseError";
  case ErrorCode::GcdViolation: return "GcdViolation";
  case ErrorCode::NotPrimitiveInput: return "NotPrimitiveInput";
  case ErrorCode::ZeroIdeal: return "ZeroIdeal";
  case ErrorCode::OwnerMismatch: return "OwnerMismatch";
  case ErrorCode::DegreeUnsupported: return "DegreeUnsupported";
  case ErrorCode::NotPositive: return "NotPositive";
  case ErrorCode::NotMember: return "NotMember";
  case ErrorCode::NotInIdeal: return "NotInIdeal";
  case ErrorCode::NonCommensurable: return "NonCommensurable";
  case ErrorCode::NotComparable: return "NotComparable";
  case ErrorCode::ExplosionGuard: return "ExplosionGuard";
  case ErrorCode::PredicateUnresolved: return "PredicateUnresolved";
  case ErrorCode::DecompositionFailed: return "DecompositionFailed";
  case ErrorCode::RegionNotInvariant: return "RegionNotInvariant";
  case ErrorCode::NotClosed: return "NotClosed";
  case ErrorCode::SingularSystem: return "SingularSystem";
  case ErrorCode::IdealNotExact: return "IdealNotExact";
  case ErrorCode::FieldMismatch: return "FieldMismatch";
  case ErrorCode::FamilyMismatch: return "FamilyMismatch";
  case ErrorCode::EmptyFamily: return "EmptyFamily";
  case ErrorCode::VerificationFailed: return "VerificationFailed";
  case ErrorCode::TargetsInfeasible: return "TargetsInfeasible";
  case ErrorCode::AlphabetNotInIdeal: return "AlphabetNotInIdeal";
  case ErrorCode::RouteUnsupported: return "RouteUnsupported";
  case ErrorCode::FieldUnsupported: return "FieldUnsupported";
  case ErrorCode::EmptySubsystem: return "EmptySubsystem";
  case ErrorCode::SubstitutionInvalid: return "SubstitutionInvalid";
  case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
  }
  return "Unknown";
}

std::string to_string(const Rat &q) {
  Rat c = q;
  c.canonicalize();
  return c.get_str();
}
std::string to_string(const Int &z) { return z.get_str(); }

Rat parse_rational(const std::string &raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail(ErrorCode::ParseError, "empty rational literal");
  auto bad = [&] { fail(ErrorCode::ParseError, "bad rational literal '" + raw + "'"); };
  auto digits = [](const std::string &t, size_t from) {
    if (from >= t.size()) return false;
    return std::all_of(t.begin() + from, t.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    size_t sa = (!a.empty() && (a[0] == '-' || a[0] == '+')) ? 1 : 0;
    if (!digits(a, sa) || !digits(b, 0)) bad();
    Int num(a[0] == '+' ? a.substr(1) : a), den(b);
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + raw + "'");
    Rat q(num, den);
    q.canonicalize();
    return q;
  }
  auto dot = s.find('.');
  size_t sg = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool neg = s[0] == '-';
  if (dot == std::string::npos) {
    if (!digits(s, sg)) bad();
    return Rat(Int(s.substr(sg))) * (neg ? -1 : 1);
  }
  std::string ip = s.substr(sg, dot - sg), fp = s.substr(dot + 1);
  if ((ip.empty() && fp.empty()) || (!ip.empty() && !digits(ip, 0)) ||
      (!fp.empty() && !digits(fp, 0)))
    bad();
  Int num(ip.empty() ? "0" : ip);
  Int den = ipow(10, fp.size());
  num = num * den + (fp.empty() ? Int(0) : Int(fp));
  Rat q(num, den);
  q.canonicalize();
  return neg ? Rat(-q) : q;
}

Int ipow(const Int &b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Rat rpow(const Rat &b, long e) {
  if (e >= 0) {
    Rat r(ipow(b.get_num(), e), ipow(b.get_den(), e));
    r.canonicalize();
    return r;
  }
  if (b == 0) fail(ErrorCode::InvalidInput, "zero to a negative power");
  return rpow(Rat(1) / b, -e);
}

Int isqrt(const Int &n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Int &n, Int *root) {
  if (n < 0) return false;
  Int r = isqrt(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

Int floor_div(const Int &a, const Int &b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod_pos(const Int &a, const Int &b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r < 0) r += abs(b);
  return r;
}

Int floor_rat(const Rat &q) { return floor_div(q.get_num(), q.get_den()); }
Int ceil_rat(const Rat &q) { return -floor_div(-q.get_num(), q.get_den()); }

Int gcd(const Int &a, const Int &b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int &a, const Int &b) {
  Int g;
  mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

long bit_length(const Int &n) {
  if (n == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

int sgn(const Rat &q) { return mpq_sgn(q.get_mpq_t()); }

static Int pollard_rho(const Int &n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    auto f = [&](const Int &v) { return mod_pos(v * v + c, n); };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = gcd(abs(x - y), n);
    }
    if (d != n) return d;
  }
}

static void factor_into(Int n, std::vector<Int> &out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    out.push_back(n);
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

std::vector<std::pair<Int, unsigned>> factorize(const Int &n0) {
  if (n0 == 0) fail(ErrorCode::InvalidInput, "factorize(0)");
  Int n = abs(n0);
  std::vector<Int> ps;
  for (unsigned long p = 2; p < 10000 && Int(p) * p <= n; ++p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ps.push_back(Int(p));
      n /= p;
    }
  }
  factor_into(n, ps);
  std::sort(ps.begin(), ps.end());
  std::vector<std::pair<Int, unsigned>> res;
  for (auto &p : ps) {
    if (!res.empty() && res.back().first == p)
      ++res.back().second;
    else
      res.emplace_back(p, 1);
  }
  return res;
}

bool rational_root(const Rat &q, unsigned long b, Rat *out) {
  if (q < 0 || b == 0) return false;
  Int rn, rd;
  if (!mpz_root(rn.get_mpz_t(), q.get_num().get_mpz_t(), b)) return false;
  if (!mpz_root(rd.get_mpz_t(), q.get_den().get_mpz_t(), b)) return false;
  if (out) *out = Rat(rn, rd);
  return true;
}

Rat round_down_dyadic(const Rat &q, long bits) {
  Int scaled = floor_rat(q * Rat(ipow(2, bits)));
  Rat r(scaled, ipow(2, bits));
  r.canonicalize();
  return r;
}

Rat round_up_dyadic(const Rat &q, long bits) {
  Int scaled = ceil_rat(q * Rat(ipow(2, bits)));
  Rat r(scaled, ipow(2, bits));
  r.canonicalize();
  return r;
}

double to_double(const Rat &q) { return q.get_d(); }

} // namespace lipfrac
