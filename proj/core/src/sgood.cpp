#include "repvar/sgood.hpp"

namespace repvar {

std::vector<FreeWord> sgood_character_words(int rank) {
  if (rank < 2) throw DomainError("sgood word list needs rank >= 2");
  FreeWord alpha = FreeWord::generator(0);
  FreeWord beta = FreeWord::generator(1);
  std::vector<FreeWord> words = {alpha, beta, alpha * beta};
  for (int g = 2; g < rank; ++g) {
    FreeWord gamma = FreeWord::generator(g);
    words.push_back(gamma);
    words.push_back(alpha * gamma);
    words.push_back(beta * gamma);
    words.push_back(alpha * beta * gamma);
  }
  return words;
}

}  // namespace repvar
