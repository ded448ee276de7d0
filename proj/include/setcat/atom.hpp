#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace setcat {

// Immutable element value. Base atoms are small integers with an optional
// display label; compound atoms (pairs, tagged sums, finite sets) arise from
// the categorical constructions. The total order fixes every canonical
// representative in the library.
class Atom {
 public:
  enum class Kind : std::uint8_t { Int, Pair, Tag, Set };

  Atom() : Atom(integer(0)) {}

  static Atom integer(int value, std::string label = {});
  static Atom pair(Atom first, Atom second);
  static Atom tag(int which, Atom payload);
  // Sorts and deduplicates, so set atoms compare structurally as sets.
  static Atom set(std::vector<Atom> members);

  Kind kind() const { return node_->kind; }
  int value() const { return node_->value; }
  const std::string& label() const { return node_->label; }
  const Atom& first() const { return node_->parts[0]; }
  const Atom& second() const { return node_->parts[1]; }
  int tag_index() const { return node_->value; }
  const Atom& payload() const { return node_->parts[0]; }
  const std::vector<Atom>& members() const { return node_->parts; }

  std::string str() const;

  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    return cmp(a, b);
  }
  friend bool operator==(const Atom& a, const Atom& b) {
    return cmp(a, b) == std::strong_ordering::equal;
  }

 private:
  struct Node {
    Kind kind;
    int value = 0;
    std::string label;
    std::vector<Atom> parts;
  };

  explicit Atom(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::strong_ordering cmp(const Atom& a, const Atom& b);

  std::shared_ptr<const Node> node_;
};

}  // namespace setcat
