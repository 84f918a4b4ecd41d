#include "repvar/presentation.hpp"

namespace repvar {

Presentation Presentation::free_group(int rank) {
  if (rank < 1) throw DomainError("free group rank must be >= 1");
  return Presentation(Kind::free_group, rank);
}

Presentation Presentation::surface(int genus) {
  if (genus < 2) throw DomainError("surface group genus must be >= 2");
  return Presentation(Kind::surface_group, genus);
}

int Presentation::genus() const {
  if (kind_ != Kind::surface_group)
    throw DomainError("genus() on a free presentation");
  return size_;
}

int Presentation::rank() const {
  if (kind_ != Kind::free_group)
    throw DomainError("rank() on a surface presentation");
  return size_;
}

int Presentation::num_generators() const {
  return kind_ == Kind::surface_group ? 2 * size_ : size_;
}

int Presentation::alpha(int i) const {
  if (kind_ != Kind::surface_group || i < 1 || i > size_)
    throw DomainError("alpha(i): bad handle index");
  return 2 * (i - 1);
}

int Presentation::beta(int i) const {
  if (kind_ != Kind::surface_group || i < 1 || i > size_)
    throw DomainError("beta(i): bad handle index");
  return 2 * (i - 1) + 1;
}

FreeWord Presentation::relator() const {
  if (kind_ != Kind::surface_group)
    throw DomainError("relator() on a free presentation");
  FreeWord w;
  for (int i = 1; i <= size_; ++i)
    w = w * word_commutator(FreeWord::generator(alpha(i)),
                            FreeWord::generator(beta(i)));
  return w;
}

std::string Presentation::generator_name(int index) const {
  if (index < 0 || index >= num_generators())
    throw DomainError("generator index out of range");
  if (kind_ == Kind::surface_group) {
    int handle = index / 2 + 1;
    return (index % 2 == 0 ? "a" : "b") + std::to_string(handle);
  }
  if (index == 0) return "a";
  if (index == 1) return "b";
  return "g" + std::to_string(index + 1);
}

std::vector<std::string> Presentation::generator_names() const {
  std::vector<std::string> names;
  names.reserve(num_generators());
  for (int i = 0; i < num_generators(); ++i)
    names.push_back(generator_name(i));
  return names;
}

}  // namespace repvar
