#include <map>
#include <string>
#include <vector>

#include "certificate_support.hpp"
#include "sylvester/certificates.hpp"

namespace sylvester {

namespace {

MultiPoly v(const std::string& name) { return MultiPoly::variable(name); }

MultiPoly flip_beta2(const MultiPoly& d) {
  return d.substitute(std::map<std::string, MultiPoly>{{"beta1", -v("beta1")}, {"beta2", -v("beta2")}});
}

}  // namespace

CertificateReport verify_n4(int grid_size, const std::optional<Mutation>& mutation) {
  if (grid_size < 1) throw PreconditionError("verify_n4: grid_size must be >= 1");
  const Rational one(1);
  detail::Accumulator acc;
  for (const auto& pt : nested_simplex_grid(grid_size, 2)) {
    const Rational& x1 = pt[0];
    const Rational& x2 = pt[1];
    const std::string where = detail::point_string(pt, 2);
    const std::vector<Rational> xs{x1, x2};
    const MultiPoly maj = symbolic_difference(2, xs, DifferenceKind::majoration);
    const MultiPoly min = symbolic_difference(2, xs, DifferenceKind::minoration);

    const Rational c1 = detail::mutated(mutation, "dif1", Rational(4));
    const Rational c2 = detail::mutated(mutation, "dif2", Rational(4));
    const MultiPoly b1 = v("beta1"), b2 = v("beta2"), l1 = v("lambda1"), l2 = v("lambda2");
    const Rational left = x1 / x2;
    const Rational right = (one - x2) / (one - x1);
    const MultiPoly rhs1 = b2 * b2 * (c1 * left) + b1 * b1 * (c1 * right);
    const MultiPoly rhs2 = (l2 * l2 - b2 * b2) * (c2 * left) + (l1 * l1 - b1 * b1) * (c2 * right);

    acc.record("dif1: G(lambda+L, lambda+L) - G(lambda+beta+L, lambda-beta+L) = 4 beta2^2 x1/x2 + 4 beta1^2 (1-x2)/(1-x1)",
               maj == rhs1, where);
    acc.record(
        "dif2: G(lambda+L+beta, lambda-beta+L) - G(2 lambda+L, L) = 4 (lambda2^2-beta2^2) x1/x2 + 4 (lambda1^2-beta1^2) "
        "(1-x2)/(1-x1)",
        min == rhs2, where);
    acc.record("majoration: independent of a, b, l0, l1",
               maj.degree("a") == 0 && maj.degree("b") == 0 && maj.degree("l0") == 0 && maj.degree("l1") == 0, where);
    acc.record("minoration and majoration even in beta", maj == flip_beta2(maj) && min == flip_beta2(min), where);
    acc.record("total degree <= 4", maj.total_degree() <= 4 && min.total_degree() <= 4, where);
    const MultiPoly at_zero = min.substitute(std::map<std::string, MultiPoly>{{"beta1", MultiPoly()}, {"beta2", MultiPoly()}});
    acc.record("dif2 at beta = 0: 4 lambda2^2 x1/x2 + 4 lambda1^2 (1-x2)/(1-x1)",
               at_zero == l2 * l2 * (Rational(4) * left) + l1 * l1 * (Rational(4) * right), where);
  }

  CertificateReport report;
  report.name = "n4";
  report.identity_checks = acc.take();
  detail::PositivityLedger ledger(detail::certificate_positivity_options());
  const MultiPoly X1 = v("x1"), X2 = v("x2");
  const MultiPoly One(Rational(1));
  report.positivity_checks.push_back(ledger.claim("x1/x2 > 0", detail::XRat(X1) / X2));
  report.positivity_checks.push_back(ledger.claim("(1-x2)/(1-x1) > 0", detail::XRat(One - X2) / (One - X1)));
  return report;
}

}  // namespace sylvester
