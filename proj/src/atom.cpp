#include "setcat/atom.hpp"

#include <algorithm>
#include <sstream>

namespace setcat {

Atom Atom::integer(int value, std::string label) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Int;
  n->value = value;
  n->label = std::move(label);
  return Atom(std::move(n));
}

Atom Atom::pair(Atom first, Atom second) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pair;
  n->parts = {std::move(first), std::move(second)};
  return Atom(std::move(n));
}

Atom Atom::tag(int which, Atom payload) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Tag;
  n->value = which;
  n->parts = {std::move(payload)};
  return Atom(std::move(n));
}

Atom Atom::set(std::vector<Atom> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Set;
  n->parts = std::move(members);
  return Atom(std::move(n));
}

std::strong_ordering Atom::cmp(const Atom& a, const Atom& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  switch (a.node_->kind) {
    case Kind::Int:
      if (auto c = a.node_->value <=> b.node_->value; c != 0) return c;
      return a.node_->label <=> b.node_->label;
    case Kind::Tag:
      if (auto c = a.node_->value <=> b.node_->value; c != 0) return c;
      return cmp(a.node_->parts[0], b.node_->parts[0]);
    case Kind::Pair:
    case Kind::Set: {
      const auto& pa = a.node_->parts;
      const auto& pb = b.node_->parts;
      if (auto c = pa.size() <=> pb.size(); c != 0) return c;
      for (std::size_t i = 0; i < pa.size(); ++i)
        if (auto c = cmp(pa[i], pb[i]); c != 0) return c;
      return std::strong_ordering::equal;
    }
  }
  return std::strong_ordering::equal;
}

std::string Atom::str() const {
  std::ostringstream out;
  switch (kind()) {
    case Kind::Int:
      if (!label().empty())
        out << label();
      else
        out << value();
      break;
    case Kind::Pair:
      out << '(' << first().str() << ',' << second().str() << ')';
      break;
    case Kind::Tag:
      out << "in" << tag_index() << '(' << payload().str() << ')';
      break;
    case Kind::Set: {
      out << '{';
      bool sep = false;
      for (const auto& m : members()) {
        if (sep) out << ',';
        out << m.str();
        sep = true;
      }
      out << '}';
      break;
    }
  }
  return out.str();
}

}  // namespace setcat
