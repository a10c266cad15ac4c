#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "polyincl/poly.hpp"
#include "polyincl/quadfield.hpp"

namespace polyincl {

/// A real algebraic number: a root of `poly` isolated in (lo, hi].
struct AlgebraicNumber {
  IntPoly poly;          // content 1, positive leading coefficient, squarefree
  Rational lo, hi;
  std::string approx;    // the decimal input
  unsigned digits_used = 0;
  bool minimal_certified = false;

  std::string minimality() const { return minimal_certified ? "certified" : "unknown"; }
};

struct GuessOptions {
  unsigned guard_digits = 20;   // N = 10^(D - guard)
  unsigned margin_digits = 10;  // extra precision for candidate evaluation
};

/// Number of fractional digits in a decimal string.
unsigned fractional_digits(const std::string& x);

/// D >= max_degree * height_digits + 50, the documented sufficiency heuristic.
bool precision_sufficient(unsigned digits, int max_degree, unsigned height_digits);

/// Integer relation search for 1, x, ..., x^max_degree by LLL on the rows
/// (e_i, round(N x^i)). Candidates pass when |p(x)| / |c| < 10^(-D/2) and all
/// |c_i| <= 10^height_digits; the gcd of the passing candidates is reduced to
/// squarefree, content-1, positive-leading form with x^k stripped. For degree
/// <= 8 a factor search over subsets of the complex roots certifies
/// minimality. Returns nullopt when nothing passes.
std::optional<AlgebraicNumber> min_poly_guess(const std::string& x, int max_degree, unsigned height_digits,
                                              const GuessOptions& opts = {});

/// Proper factor of p over Z vanishing at x (degree <= 8 only), if any.
/// Sets `searched` to whether the search was carried out.
std::optional<IntPoly> find_vanishing_factor(const IntPoly& p, const Real& x, bool& searched);

struct VerificationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  bool passed = true;
  std::vector<VerificationCheck> checks;
  /// Name of the first failing check, empty when all pass.
  std::string failed_check() const;
};

/// Returns the number to `digits` fractional digits, e.g. by re-running the
/// geometric refinement at a higher precision.
using RecheckFn = std::function<std::string(unsigned digits)>;

/// Exact checks: well-formedness, Sturm count 1 on the interval, residual
/// bound at the input precision, optional re-refinement to recheck_digits and
/// optional exact substitution of a closed form.
VerificationReport verify_algebraic(const AlgebraicNumber& a, unsigned recheck_digits, const RecheckFn& recheck = {},
                                    const std::optional<QuadField>& closed_form = std::nullopt);

nlohmann::json algebraic_to_json(const AlgebraicNumber& a);
AlgebraicNumber algebraic_from_json(const nlohmann::json& j);
nlohmann::json report_to_json(const VerificationReport& r);

// ---------------------------------------------------------------------------
// Closed forms of the platonic inclusion table.

struct ClosedForm {
  char p = 0;  // inscribed solid
  char q = 0;  // container
  std::string text;
  QuadField value;
};

/// The 18 entries of the table with radical closed forms.
const std::vector<ClosedForm>& closed_forms();
std::optional<ClosedForm> closed_form_for(char p, char q);

/// Reciprocity identities, evaluated exactly.
struct ReciprocityCheck {
  std::string name;
  bool holds = false;
};
std::vector<ReciprocityCheck> reciprocity_checks();

}  // namespace polyincl
