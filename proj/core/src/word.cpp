#include "repvar/word.hpp"

#include <algorithm>

namespace repvar {

FreeWord::FreeWord(std::vector<Syllable> syllables) {
  for (auto& s : syllables) {
    if (s.second == 0) continue;
    if (!syllables_.empty() && syllables_.back().first == s.first) {
      syllables_.back().second += s.second;
      if (syllables_.back().second == 0) syllables_.pop_back();
    } else {
      syllables_.push_back(s);
    }
  }
}

std::int64_t FreeWord::length() const {
  std::int64_t n = 0;
  for (const auto& s : syllables_) n += s.second < 0 ? -s.second : s.second;
  return n;
}

int FreeWord::max_generator_index() const {
  int m = -1;
  for (const auto& s : syllables_) m = std::max(m, s.first);
  return m;
}

FreeWord FreeWord::inverse() const {
  std::vector<Syllable> rev;
  rev.reserve(syllables_.size());
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
    rev.emplace_back(it->first, -it->second);
  FreeWord w;
  w.syllables_ = std::move(rev);  // already reduced
  return w;
}

FreeWord FreeWord::operator*(const FreeWord& o) const {
  std::vector<Syllable> all = syllables_;
  all.insert(all.end(), o.syllables_.begin(), o.syllables_.end());
  return FreeWord(std::move(all));
}

FreeWord FreeWord::conjugated_by(const FreeWord& y) const {
  return y.inverse() * (*this) * y;
}

FreeWord FreeWord::substitute(const std::vector<FreeWord>& images) const {
  FreeWord out;
  for (const auto& [gen, exp] : syllables_) {
    if (gen < 0 || gen >= static_cast<int>(images.size()))
      throw DomainError("substitute: generator index out of range");
    FreeWord piece = exp >= 0 ? images[gen] : images[gen].inverse();
    std::int64_t n = exp >= 0 ? exp : -exp;
    for (std::int64_t k = 0; k < n; ++k) out = out * piece;
  }
  return out;
}

std::string FreeWord::to_string(
    const std::vector<std::string>& generator_names) const {
  if (syllables_.empty()) return "1";
  std::string s;
  for (const auto& [gen, exp] : syllables_) {
    if (!s.empty()) s += "*";
    if (gen < static_cast<int>(generator_names.size()))
      s += generator_names[gen];
    else
      s += "g" + std::to_string(gen);
    if (exp != 1) s += "^" + std::to_string(exp);
  }
  return s;
}

FreeWord word_commutator(const FreeWord& u, const FreeWord& v) {
  return u * v * u.inverse() * v.inverse();
}

}  // namespace repvar
