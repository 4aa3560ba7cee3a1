// Walks the anti-Fock representation: exact algebra, then the truncated matrices and the
// intertwiner onto the Schrodinger pair.

#include "ccr/expression_parser.hpp"
#include "ccr/representation.hpp"
#include "ccr/weyl.hpp"

#include <iostream>

int main() {
  using namespace ccr;
  const auto anti = RepresentationKind::anti_fock();

  const OperatorExpr expr = parse_expression("J * a * a+");
  std::cout << "normal form of J * a * a+: " << normal_order(expr, anti.j_rule()).to_string() << '\n';
  for (std::int64_t k = 0; k < 4; ++k) {
    const FormalState e = FormalState::basis(anti, k);
    std::cout << "N e" << k << " = " << apply(op_adag() * op_a(), e).to_string()
              << "    (e" << k << ", e" << k << ") = " << inner(e, e).to_string() << '\n';
  }

  const auto rep = build_rep<double>(anti, 48);
  const auto w = build_intertwiner(rep);
  const auto pq = build_pq(rep);
  const auto target = schrodinger_target<double>(48);
  std::cout << "|W P W+ - p| = " << max_abs(CMatrix<double>(w.conjugate(pq.p) - target.p)) << '\n';
  std::cout << "Weyl residual at s = t = 0.3, D = 48: " << weyl_residual(pq, 0.3, 0.3, weyl_margin(48)) << '\n';
}
