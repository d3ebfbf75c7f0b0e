#pragma once

// Finite crystallographic Coxeter groups built from a Cartan matrix.
//
// Elements are enumerated once by closing the simple reflections, acting as
// permutations of the finite root system, under right multiplication.  The
// resulting system is immutable; every query below is a table lookup or a
// short walk along a reduced word.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace heckecells {

using ElementId = std::uint32_t;
using Generator = int;  // 0-based generator index
using DescentSet = std::uint32_t;  // bit s set <=> generator s is a descent

struct CartanSpec {
  std::string name;  // preset name ("A3", "B2", ...) or empty for custom input
  std::vector<std::string> labels;
  std::vector<std::vector<int>> matrix;

  std::size_t rank() const { return labels.size(); }
};

/// Presets "A1".."A7" (the symmetric groups S2..S8), "B2", "B3".
CartanSpec cartan_preset(std::string_view name);
/// `{"labels":["1","2"],"matrix":[[2,-1],[-1,2]]}`
CartanSpec cartan_from_json(const nlohmann::json& doc);
nlohmann::json cartan_to_json(const CartanSpec& spec);

enum class CoxeterFamily { A, B, Other };

struct CoxeterType {
  CoxeterFamily family = CoxeterFamily::Other;
  int rank = 0;
  std::string to_string() const;
};

struct ElementAttributes {
  int length = 0;
  DescentSet left_descents = 0;
  DescentSet right_descents = 0;
  ElementId inverse = 0;
  std::optional<std::vector<int>> one_line;  // type A only, values 1..n
};

class CoxeterSystem {
 public:
  static constexpr std::size_t kDefaultElementBound = 50000;

  static CoxeterSystem build(const CartanSpec& spec,
                             std::size_t element_bound = kDefaultElementBound);

  const CartanSpec& spec() const { return spec_; }
  const CoxeterType& type() const { return type_; }
  std::string name() const;
  std::size_t size() const { return length_.size(); }
  int rank() const { return static_cast<int>(spec_.rank()); }
  int coxeter_exponent(Generator s, Generator t) const { return m_[s][t]; }
  std::size_t num_positive_roots() const { return num_positive_roots_; }

  ElementId identity() const { return 0; }
  ElementId longest() const { return longest_; }
  ElementId generator(Generator s) const { return right_[0][s]; }

  int length(ElementId w) const { return length_[w]; }
  ElementId left_mult(Generator s, ElementId w) const { return left_[w][s]; }
  ElementId right_mult(ElementId w, Generator s) const { return right_[w][s]; }
  ElementId inverse(ElementId w) const { return inverse_[w]; }
  DescentSet left_descents(ElementId w) const { return left_desc_[w]; }
  DescentSet right_descents(ElementId w) const { return right_desc_[w]; }
  bool is_left_descent(Generator s, ElementId w) const {
    return (left_desc_[w] >> s) & 1U;
  }
  bool is_right_descent(ElementId w, Generator s) const {
    return (right_desc_[w] >> s) & 1U;
  }
  ElementId multiply(ElementId x, ElementId y) const;

  /// ShortLex-minimal reduced word, 0-based generator indices.
  const std::vector<Generator>& word(ElementId w) const { return words_[w]; }
  /// Digit string of 1-based generator indices ("212"); "e" for the identity.
  const std::string& element_name(ElementId w) const { return names_[w]; }
  std::optional<ElementId> find(std::string_view name) const;
  /// Like find() but throws UnknownElement.
  ElementId element(std::string_view name) const;
  ElementId from_word(const std::vector<Generator>& word) const;

  bool bruhat_leq(ElementId x, ElementId y) const;

  ElementAttributes attributes(ElementId w) const;

  bool is_type_a() const { return type_.family == CoxeterFamily::A; }
  /// One-line notation (w(1), ..., w(n)) for type A_{n-1}.
  std::vector<int> one_line(ElementId w) const;
  ElementId from_one_line(const std::vector<int>& perm) const;

 private:
  CoxeterSystem() = default;
  void build_bruhat_relation();

  CartanSpec spec_;
  CoxeterType type_;
  std::vector<std::vector<int>> m_;
  std::size_t num_positive_roots_ = 0;
  ElementId longest_ = 0;
  std::vector<int> length_;
  std::vector<std::vector<ElementId>> left_;   // left_[w][s] = s*w
  std::vector<std::vector<ElementId>> right_;  // right_[w][s] = w*s
  std::vector<ElementId> inverse_;
  std::vector<DescentSet> left_desc_;
  std::vector<DescentSet> right_desc_;
  std::vector<std::vector<Generator>> words_;
  std::vector<std::string> names_;
  // bruhat_rows_[y] has bit x set iff x <= y; only for small systems.
  std::vector<std::vector<std::uint64_t>> bruhat_rows_;
  std::vector<std::vector<int>> one_line_;
  std::unordered_map<std::string, ElementId> name_index_;
  std::map<std::vector<int>, ElementId> one_line_index_;
};

/// Number of elements up to which the Bruhat order is stored as a bit matrix.
inline constexpr std::size_t kBruhatBitsetLimit = 1000;

}  // namespace heckecells
