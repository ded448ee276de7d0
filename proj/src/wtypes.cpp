#include "setcat/wtypes.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace setcat {

namespace {

// all assignments of values to slots, advanced odometer style
bool advance(std::vector<std::size_t>& idx, std::size_t radix) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (++idx[i] < radix) return true;
    idx[i] = 0;
  }
  return false;
}

}  // namespace

PolySig PolySig::from_map(FinMap f) {
  PolySig sig;
  sig.fibers_.resize(f.cod().size());
  for (std::size_t j = 0; j < f.cod().size(); ++j) sig.fibers_[j] = f.fiber(j);
  sig.f_ = std::move(f);
  return sig;
}

PolySig PolySig::from_fiber_sizes(const std::vector<std::size_t>& sizes) {
  std::vector<Atom> labels;
  for (std::size_t i = 0; i < sizes.size(); ++i)
    labels.push_back(Atom::integer(static_cast<int>(i + 1)));
  FinObj a = FinObj::make("A", labels);
  std::vector<Atom> branches;
  for (std::size_t i = 0; i < sizes.size(); ++i)
    for (std::size_t b = 1; b <= sizes[i]; ++b)
      branches.push_back(
          Atom::pair(labels[i], Atom::integer(static_cast<int>(b))));
  FinObj bobj = FinObj::make("B", std::move(branches));
  return from_map(
      FinMap::from_fn(bobj, a, [](const Atom& x) { return x.first(); }));
}

FinObj poly_apply(const PolySig& sig, const FinObj& x) {
  std::vector<Atom> elems;
  for (std::size_t a = 0; a < sig.labels().size(); ++a) {
    const auto& fib = sig.fibers()[a];
    if (fib.empty()) {
      elems.push_back(Atom::pair(sig.labels().at(a), Atom::set({})));
      continue;
    }
    if (x.empty()) continue;
    std::vector<std::size_t> idx(fib.size(), 0);
    do {
      std::vector<Atom> table;
      for (std::size_t i = 0; i < fib.size(); ++i)
        table.push_back(Atom::pair(sig.branches().at(fib[i]), x.at(idx[i])));
      elems.push_back(
          Atom::pair(sig.labels().at(a), Atom::set(std::move(table))));
    } while (advance(idx, x.size()));
  }
  return FinObj::make("P(" + x.id() + ")", std::move(elems));
}

TreeId WStore::sup(std::size_t label, std::vector<TreeId> children) {
  if (label >= sig_.labels().size()) throw CategoryError("label out of range");
  if (children.size() != sig_.fibers()[label].size())
    throw CategoryError("children do not match the branching arity");
  for (TreeId c : children)
    if (c >= nodes_.size()) throw CategoryError("unknown child tree");
  auto key = std::make_pair(label, children);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  std::size_t h = 0;
  for (TreeId c : children) h = std::max(h, nodes_[c].height + 1);
  nodes_.push_back({label, std::move(children), h});
  index_.emplace(std::move(key), nodes_.size() - 1);
  return nodes_.size() - 1;
}

std::vector<TreeId> wtype_enum(WStore& store, std::size_t depth) {
  std::set<TreeId> seen;
  std::vector<TreeId> cur;
  for (std::size_t a = 0; a < store.sig().labels().size(); ++a)
    if (store.sig().fibers()[a].empty()) {
      TreeId t = store.sup(a, {});
      if (seen.insert(t).second) cur.push_back(t);
    }
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<TreeId> base = cur;
    for (std::size_t a = 0; a < store.sig().labels().size(); ++a) {
      std::size_t arity = store.sig().fibers()[a].size();
      if (arity == 0 || base.empty()) continue;
      std::vector<std::size_t> idx(arity, 0);
      do {
        std::vector<TreeId> children;
        for (std::size_t i = 0; i < arity; ++i) children.push_back(base[idx[i]]);
        TreeId t = store.sup(a, std::move(children));
        if (seen.insert(t).second) cur.push_back(t);
      } while (advance(idx, base.size()));
    }
  }
  std::vector<TreeId> out(seen.begin(), seen.end());
  return out;
}

Atom fold(const WStore& store, const FinMap& algebra, TreeId w) {
  std::map<TreeId, Atom> memo;
  std::function<Atom(TreeId)> go = [&](TreeId t) -> Atom {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    std::size_t a = store.label(t);
    const auto& fib = store.sig().fibers()[a];
    std::vector<Atom> table;
    for (std::size_t i = 0; i < fib.size(); ++i)
      table.push_back(
          Atom::pair(store.sig().branches().at(fib[i]), go(store.children(t)[i])));
    Atom arg = Atom::pair(store.sig().labels().at(a), Atom::set(std::move(table)));
    Atom v = algebra.apply(arg);
    memo.emplace(t, v);
    return v;
  };
  return go(w);
}

Closure transitive_closure(const WStore& store, TreeId w) {
  std::set<TreeId> seen;
  std::function<void(TreeId)> go = [&](TreeId t) {
    if (!seen.insert(t).second) return;
    for (TreeId c : store.children(t)) go(c);
  };
  go(w);
  Closure out;
  out.tc.assign(seen.begin(), seen.end());
  for (TreeId t : out.tc)
    if (t != w) out.st.push_back(t);
  return out;
}

namespace {

// memoized bisimilarity, optionally guarded by relabelings
struct Bisim {
  const WStore& store;
  const std::optional<BisimLabels>& labels;
  std::map<std::pair<TreeId, TreeId>, bool> memo;

  Atom branch_atom(TreeId t, std::size_t i) const {
    return store.sig().branches().at(
        store.sig().fibers()[store.label(t)][i]);
  }

  // every child of u is bisimilar to some child of v with a matching q label
  bool half(TreeId u, TreeId v) {
    const auto& cu = store.children(u);
    const auto& cv = store.children(v);
    for (std::size_t i = 0; i < cu.size(); ++i) {
      bool found = false;
      for (std::size_t j = 0; !found && j < cv.size(); ++j) {
        if (labels && labels->q.apply(branch_atom(u, i)) !=
                          labels->q.apply(branch_atom(v, j)))
          continue;
        found = sim(cu[i], cv[j]);
      }
      if (!found) return false;
    }
    return true;
  }

  bool sim(TreeId u, TreeId v) {
    auto key = std::make_pair(u, v);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool ok = true;
    if (labels &&
        labels->p.apply(store.sig().labels().at(store.label(u))) !=
            labels->p.apply(store.sig().labels().at(store.label(v))))
      ok = false;
    if (ok) ok = half(u, v) && half(v, u);
    memo.emplace(key, ok);
    return ok;
  }
};

}  // namespace

BisimTable bisim_test(const WStore& store, TreeId w, TreeId w2,
                      const std::optional<BisimLabels>& labels) {
  Bisim b{store, labels, {}};
  BisimTable out;
  out.left = transitive_closure(store, w).tc;
  out.right = transitive_closure(store, w2).tc;
  out.table.assign(out.left.size(), std::vector<bool>(out.right.size(), false));
  for (std::size_t i = 0; i < out.left.size(); ++i)
    for (std::size_t j = 0; j < out.right.size(); ++j)
      out.table[i][j] = b.sim(out.left[i], out.right[j]);
  std::size_t wi = std::lower_bound(out.left.begin(), out.left.end(), w) -
                   out.left.begin();
  std::size_t wj = std::lower_bound(out.right.begin(), out.right.end(), w2) -
                   out.right.begin();
  out.top = out.table[wi][wj];
  return out;
}

CollectionSpan collection_span_from(const Representation& pi,
                                    const PolySig& f) {
  const FinObj& a = f.labels();
  const FinObj& u = pi.pi.cod();
  std::vector<Atom> c_elems;
  std::vector<Atom> d_elems;
  for (std::size_t ia = 0; ia < a.size(); ++ia) {
    std::vector<Atom> fib_atoms;
    for (std::size_t bi : f.fibers()[ia])
      fib_atoms.push_back(f.branches().at(bi));
    FinObj bfib = FinObj::make("B_a", fib_atoms);
    for (std::size_t iu = 0; iu < u.size(); ++iu) {
      std::vector<Atom> eu_atoms;
      for (std::size_t e : pi.pi.fiber(iu)) eu_atoms.push_back(pi.pi.dom().at(e));
      FinObj eu = FinObj::make("E_u", eu_atoms);
      for (const auto& h : all_covers(eu, bfib)) {
        std::vector<Atom> graph;
        for (std::size_t e = 0; e < eu.size(); ++e)
          graph.push_back(Atom::pair(eu.at(e), h.apply(eu.at(e))));
        Atom c = Atom::pair(a.at(ia), Atom::set(std::move(graph)));
        c_elems.push_back(c);
        for (const auto& e : eu.elements()) d_elems.push_back(Atom::pair(c, e));
      }
    }
  }
  FinObj cobj = FinObj::make("spanC", std::move(c_elems));
  FinObj dobj = FinObj::make("spanD", std::move(d_elems));
  FinMap p = FinMap::from_fn(cobj, a, [](const Atom& x) { return x.first(); });
  FinMap g = FinMap::from_fn(dobj, cobj,
                             [](const Atom& x) { return x.first(); });
  FinMap q = FinMap::from_fn(dobj, f.branches(), [](const Atom& x) {
    return eval_table(x.first().second(), x.second());
  });
  return {Square::make(q, g, f.map(), p)};
}

std::vector<TreeId> wtype_via_span(WStore& target, const CollectionSpan& span,
                                   std::size_t depth) {
  const Square& sq = span.square;
  if (!is_covering_square(sq).covering)
    throw CategoryError("span square is not covering");
  if (!(sq.right() == target.sig().map()))
    throw CategoryError("span does not sit over the target signature");
  const FinMap& q = sq.top();
  const FinMap& g = sq.left();
  const FinMap& p = sq.bottom();

  // internal span condition: every cover of a g-fiber is refined by a fiber
  // over the same label
  for (std::size_t c = 0; c < g.cod().size(); ++c) {
    std::vector<Atom> dc_atoms;
    for (std::size_t d : g.fiber(c)) dc_atoms.push_back(g.dom().at(d));
    FinObj dc = FinObj::make("D_c", dc_atoms);
    for (std::size_t m = 1; m <= dc.size() + 1; ++m) {
      std::vector<Atom> xs;
      for (std::size_t i = 1; i <= m; ++i)
        xs.push_back(Atom::integer(static_cast<int>(i)));
      FinObj x = FinObj::make("X", std::move(xs));
      for (const auto& e : all_covers(x, dc)) {
        bool refined = false;
        for (std::size_t c2 = 0; !refined && c2 < g.cod().size(); ++c2) {
          if (p.apply_index(c2) != p.apply_index(c)) continue;
          std::vector<Atom> dc2_atoms;
          for (std::size_t d : g.fiber(c2)) dc2_atoms.push_back(g.dom().at(d));
          FinObj dc2 = FinObj::make("D_c2", dc2_atoms);
          for (const auto& t : all_maps(dc2, x)) {
            bool commutes = true;
            for (const auto& d2 : dc2.elements())
              if (q.apply(e.apply(t.apply(d2))) != q.apply(d2)) {
                commutes = false;
                break;
              }
            if (commutes) {
              refined = true;
              break;
            }
          }
        }
        if (!refined) throw CategoryError("span condition fails");
      }
    }
  }

  WStore left(PolySig::from_map(g));
  std::vector<TreeId> carrier = wtype_enum(left, depth);

  BisimLabels lab{p, q};
  std::optional<BisimLabels> labels(lab);
  Bisim bis{left, labels, {}};

  // coherent: same-q siblings carry bisimilar subtrees and q covers the
  // branch set of the underlying label, hereditarily
  std::map<TreeId, bool> coherent;
  std::function<bool(TreeId)> coh = [&](TreeId t) -> bool {
    auto it = coherent.find(t);
    if (it != coherent.end()) return it->second;
    bool ok = true;
    std::size_t c = left.label(t);
    const auto& fib = left.sig().fibers()[c];
    const auto& ch = left.children(t);
    std::size_t a = p.apply_index(c);
    std::set<std::size_t> hit;
    for (std::size_t i = 0; i < fib.size(); ++i)
      hit.insert(q.apply_index(fib[i]));
    std::set<std::size_t> want(target.sig().fibers()[a].begin(),
                               target.sig().fibers()[a].end());
    if (hit != want) ok = false;
    for (std::size_t i = 0; ok && i < ch.size(); ++i) {
      if (!coh(ch[i])) ok = false;
      for (std::size_t j = i + 1; ok && j < ch.size(); ++j)
        if (q.apply_index(fib[i]) == q.apply_index(fib[j]) &&
            !(bis.sim(ch[i], ch[j]) && bis.sim(ch[j], ch[i])))
          ok = false;
    }
    coherent.emplace(t, ok);
    return ok;
  };

  std::map<TreeId, TreeId> to_target;
  std::function<TreeId(TreeId)> tr = [&](TreeId t) -> TreeId {
    auto it = to_target.find(t);
    if (it != to_target.end()) return it->second;
    std::size_t c = left.label(t);
    std::size_t a = p.apply_index(c);
    const auto& fib = left.sig().fibers()[c];
    std::vector<TreeId> children;
    for (std::size_t b : target.sig().fibers()[a]) {
      for (std::size_t i = 0; i < fib.size(); ++i)
        if (q.apply_index(fib[i]) == b) {
          children.push_back(tr(left.children(t)[i]));
          break;
        }
    }
    TreeId out = target.sup(a, std::move(children));
    to_target.emplace(t, out);
    return out;
  };

  std::set<TreeId> result;
  for (TreeId t : carrier)
    if (coh(t)) result.insert(tr(t));
  return {result.begin(), result.end()};
}

PPiResult p_pi_quotient(const FinObj& x, const Representation& pi,
                        const MapClass& cls) {
  PowerClass power = PowerClass::make(x, cls);
  const FinObj& u = pi.pi.cod();
  std::vector<Atom> elems;
  for (std::size_t iu = 0; iu < u.size(); ++iu) {
    auto fib = pi.pi.fiber(iu);
    if (fib.empty()) {
      elems.push_back(Atom::pair(u.at(iu), Atom::set({})));
      continue;
    }
    if (x.empty()) continue;
    std::vector<std::size_t> idx(fib.size(), 0);
    do {
      std::vector<Atom> table;
      for (std::size_t i = 0; i < fib.size(); ++i)
        table.push_back(Atom::pair(pi.pi.dom().at(fib[i]), x.at(idx[i])));
      elems.push_back(Atom::pair(u.at(iu), Atom::set(std::move(table))));
    } while (advance(idx, x.size()));
  }
  FinObj total = FinObj::make("Ppi(" + x.id() + ")", std::move(elems));
  FinMap tau = FinMap::from_fn(total, power.object(), [](const Atom& e) {
    std::vector<Atom> image;
    for (const auto& pr : e.second().members()) image.push_back(pr.second());
    return Atom::set(std::move(image));
  });
  return {total, tau};
}

}  // namespace setcat
