#pragma once

#include <compare>
#include <vector>

#include "lipfrac/field.hpp"

namespace lipfrac {

// Indefinite binary quadratic form a x^2 + b xy + c y^2.
struct Form {
  Int a, b, c;
  auto operator<=>(const Form &o) const {
    if (auto r = cmp(a, o.a); r != 0) return r <=> 0;
    if (auto r = cmp(b, o.b); r != 0) return r <=> 0;
    return cmp(c, o.c) <=> 0;
  }
  bool operator==(const Form &o) const { return a == o.a && b == o.b && c == o.c; }
  Int disc() const { return b * b - 4 * a * c; }
  std::string str() const;
};

bool is_reduced(const Form &f, const Int &D);
Form rho(const Form &f, const Int &D);
Form reduce_form(Form f, const Int &D);
std::vector<Form> form_cycle(const Form &reduced, const Int &D);
// Least form in the reduced cycle of f: an SL2(Z)-class invariant.
Form cycle_canonical(const Form &f, const Int &D);
// Invariant of the class of f up to scaling by elements of either norm sign.
Form wide_class_key(const Form &f, const Int &D);

// Reduced primitive forms of discriminant D, one wide class per entry,
// each representative with a > 0.
std::vector<Form> wide_class_reps(const Int &D);

// epsilon = (x + y sqrt(D)) / 2 > 1, the fundamental unit of the order of discriminant D.
struct QuadUnit {
  Int x, y;
  int norm = 1;
};
QuadUnit fundamental_unit(const Int &D);

struct QuadInfo {
  Int trace, norm;  // of beta
  Int disc;         // of Z[beta]
  Int fund_disc;    // Delta_0
  Int conductor;    // f with disc = f^2 Delta_0
  Int squarefree;   // d with Q(sqrt d)
  int orient = 1;   // sign of beta - beta'
};
QuadInfo quad_info(const SpecPtr &spec);

// Primitive oriented form of an integral lattice with basis rows in beta coordinates.
Form lattice_form(const QuadInfo &q, const IntMat &basis);
// Integral lattice in beta coordinates realizing a form of discriminant f'^2 Delta_0.
IntMat form_lattice(const QuadInfo &q, const Form &f);

std::vector<Int> divisors(const Int &n);

} // namespace lipfrac
