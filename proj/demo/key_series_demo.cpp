// Walks through the main objects for w = 42531 and w = 321: the sets A_l(w)
// and B_{2,3}(w), the numerator P_w, the master identity, and the worked
// coefficient of x1^2 x2^2 x3^2 in the key polynomial of (4,2) and 321.

#include <iostream>

#include "keyseries/key_series.hpp"
#include "keyseries/lattice_counts.hpp"
#include "keyseries/multiplicity.hpp"

using namespace keyseries;

int main() {
  auto w = Permutation::parse("42531");
  std::cout << "w = " << w.to_string() << ", reduced word";
  for (int i : w.reduced_word()) std::cout << ' ' << i;
  std::cout << "\n";

  for (int l = 1; l <= 4; ++l) {
    std::cout << "A_" << l << "(w):";
    for (const auto& a : enum_A(w, l)) std::cout << ' ' << a.to_string();
    std::cout << "\n";
  }

  std::cout << "B_{2,3}(w):";
  for (const auto& eta : enum_B(w, 2, 3)) std::cout << ' ' << eta.to_string();
  std::cout << "\n";

  auto eta = MultiSet::parse("11234");
  std::cout << "presentations of " << eta.to_string() << ":";
  for (const auto& p : presentations(w, 2, 3, eta).pairs)
    std::cout << " (" << p.alpha.to_string() << "," << p.beta.to_string() << ")";
  std::cout << "\n\n";

  for (const char* text : {"31425", "14253", "4123"}) {
    auto v = Permutation::parse(text);
    std::cout << "P_" << text << " = " << numerator_P(v).to_string() << "\n";
  }

  auto v = Permutation::parse("3142");
  auto form = verify_form(v, 4);
  std::cout << "\nK_3142 = P_3142 / prod(1 - x^alpha T_l) up to T-degree 4: " << (form.ok ? "holds" : "FAILS")
            << " (" << form.terms << " terms)\n";

  auto w3 = Permutation::parse("321");
  auto lambda = Partition::parse("4,2");
  Monomial mu = Monomial::make_x(1, 2) * Monomial::make_x(2, 2) * Monomial::make_x(3, 2);
  std::cout << "\nK_{(4,2),321} = " << key_polynomial(lambda, w3).to_string() << "\n";
  std::cout << "coefficient of " << mu.to_string() << ": " << key_polynomial(lambda, w3).coefficient(mu)
            << "; F count " << F_coefficient(lambda, w3, mu) << ", second order approximation "
            << approx_coefficient(lambda, w3, mu, 2) << "\n";
  std::cout << "m_{123}^{1,2}(321) = " << multiplicity2(w3, 1, 2, MultiSet::parse("123")) << "\n";
  return 0;
}
