/**
 * @file sset.hpp
 * @brief Finite simplicial sets with Eilenberg-Zilber normal-form simplices.
 *
 * A finite simplicial set is stored by its nondegenerate cells.  Every
 * simplex, degenerate or not, is a SimplexRef: a nondegenerate cell plus a
 * strictly decreasing degeneracy word s_{i_1} ... s_{i_k} (i_1 > ... > i_k).
 * Equivalently the word is the set of positions j at which the vertex
 * sequence repeats, i.e. the surjection [n] -> [dim cell] collapsing j and
 * j+1.  Because this form is unique, simplex equality is a syntactic check.
 */
#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mapcoh/errors.hpp"

namespace mapcoh {

using CellId = std::uint32_t;

/// A simplex in Eilenberg-Zilber normal form.
struct SimplexRef {
  CellId cell = 0;
  std::vector<int> degens;  // strictly decreasing

  bool degenerate() const { return !degens.empty(); }
  auto operator<=>(const SimplexRef&) const = default;
};

struct SimplexRefHash {
  std::size_t operator()(const SimplexRef& s) const noexcept {
    std::size_t h = std::hash<CellId>{}(s.cell);
    for (int d : s.degens) h = h * 1000003u ^ std::hash<int>{}(d + 1);
    return h;
  }
};

/// A monotone map [source] -> [target], stored by its values.
struct MonotoneMap {
  int target = 0;
  std::vector<int> values;

  int source() const { return static_cast<int>(values.size()) - 1; }

  static MonotoneMap identity(int n) {
    MonotoneMap m{n, std::vector<int>(n + 1)};
    for (int i = 0; i <= n; ++i) m.values[i] = i;
    return m;
  }

  /// δ^i : [n-1] -> [n], skipping i.
  static MonotoneMap coface(int n, int i) {
    MonotoneMap m{n, {}};
    for (int k = 0; k < n; ++k) m.values.push_back(k < i ? k : k + 1);
    return m;
  }

  /// σ^j : [n+1] -> [n], hitting j twice.
  static MonotoneMap codegeneracy(int n, int j) {
    MonotoneMap m{n, {}};
    for (int k = 0; k <= n + 1; ++k) m.values.push_back(k <= j ? k : k - 1);
    return m;
  }

  /// (*this) ∘ first
  MonotoneMap after(const MonotoneMap& first) const {
    if (first.target != source()) throw InvalidInput("monotone composition mismatch");
    MonotoneMap m{target, {}};
    for (int v : first.values) m.values.push_back(values[v]);
    return m;
  }

  bool valid() const {
    if (values.empty() || target < 0) return false;
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (values[k] < 0 || values[k] > target) return false;
      if (k > 0 && values[k] < values[k - 1]) return false;
    }
    return true;
  }

  bool surjective() const { return values.front() == 0 && values.back() == target && std::adjacent_find(values.begin(), values.end(), [](int a, int b) { return b > a + 1; }) == values.end(); }
  bool injective() const { return std::adjacent_find(values.begin(), values.end()) == values.end(); }

  bool operator==(const MonotoneMap&) const = default;
};

/// Surjection [level] -> [level - |degens|] collapsing each j in `degens` with j+1.
inline MonotoneMap surjection_of(int level, const std::vector<int>& degens) {
  MonotoneMap m{level - static_cast<int>(degens.size()), std::vector<int>(level + 1, 0)};
  for (int j = 0; j < level; ++j) {
    bool repeat = std::find(degens.begin(), degens.end(), j) != degens.end();
    m.values[j + 1] = m.values[j] + (repeat ? 0 : 1);
  }
  return m;
}

/// Normal-form degeneracy word of a surjection: repeat positions, decreasing.
inline std::vector<int> degens_of(const MonotoneMap& surj) {
  std::vector<int> out;
  for (int j = surj.source() - 1; j >= 0; --j)
    if (surj.values[j] == surj.values[j + 1]) out.push_back(j);
  return out;
}

/// Applies an extra surjection σ : [n] -> [level(r)] on top of r: the simplex K(σ)(r).
inline SimplexRef degenerate(const SimplexRef& r, int r_level, const MonotoneMap& sigma) {
  MonotoneMap eta = surjection_of(r_level, r.degens);
  return {r.cell, degens_of(eta.after(sigma))};
}

/// All strictly decreasing words of length k drawn from {0, ..., level-1}.
inline std::vector<std::vector<int>> degeneracy_words(int level, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > level) return out;
  std::vector<int> word;
  std::function<void(int)> rec = [&](int next_max) {
    if (static_cast<int>(word.size()) == k) {
      out.push_back(word);
      return;
    }
    for (int j = next_max; j >= 0; --j) {
      if (j + 1 < k - static_cast<int>(word.size())) break;
      word.push_back(j);
      rec(j - 1);
      word.pop_back();
    }
  };
  rec(level - 1);
  std::sort(out.begin(), out.end());
  return out;
}

/**
 * A finite simplicial set: nondegenerate cells with normal-form faces.
 */
class FiniteSimplicialSet {
 public:
  struct Cell {
    std::string label;
    int dim = 0;
    std::vector<SimplexRef> faces;  // d_0 .. d_dim for dim >= 1
  };

  FiniteSimplicialSet() = default;
  explicit FiniteSimplicialSet(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  /// Adds a cell whose faces reference existing cells.
  CellId add_cell(std::string label, int dim, std::vector<SimplexRef> faces = {}) {
    if (dim < 0) throw InvalidInput("negative cell dimension");
    if (dim == 0 && !faces.empty()) throw InvalidInput("0-cell '" + label + "' cannot have faces");
    if (dim > 0 && static_cast<int>(faces.size()) != dim + 1)
      throw InvalidInput("cell '" + label + "' of dimension " + std::to_string(dim) + " needs " +
                         std::to_string(dim + 1) + " faces");
    for (const auto& f : faces) {
      if (f.cell >= cells_.size()) throw InvalidInput("face of '" + label + "' references an unknown cell");
      for (std::size_t k = 0; k < f.degens.size(); ++k) {
        if (k > 0 && f.degens[k] >= f.degens[k - 1])
          throw InvalidInput("degeneracy word of a face of '" + label + "' is not strictly decreasing");
      }
      int level = cells_[f.cell].dim + static_cast<int>(f.degens.size());
      if (level != dim - 1)
        throw InvalidInput("face of '" + label + "' has level " + std::to_string(level) + ", expected " +
                           std::to_string(dim - 1));
      if (!f.degens.empty() && f.degens.front() >= level)
        throw InvalidInput("degeneracy index out of range in a face of '" + label + "'");
    }
    if (by_label_.count(label)) throw InvalidInput("duplicate cell label '" + label + "'");
    CellId id = static_cast<CellId>(cells_.size());
    by_label_.emplace(label, id);
    if (static_cast<int>(by_dim_.size()) <= dim) by_dim_.resize(dim + 1);
    position_.push_back(by_dim_[dim].size());
    by_dim_[dim].push_back(id);
    cells_.push_back(Cell{std::move(label), dim, std::move(faces)});
    return id;
  }

  void set_basepoint(CellId v) {
    if (v >= cells_.size() || cells_[v].dim != 0) throw InvalidInput("basepoint must be a 0-cell");
    basepoint_ = v;
  }
  void clear_basepoint() { basepoint_.reset(); }

  bool pointed() const { return basepoint_.has_value(); }
  std::optional<CellId> basepoint() const { return basepoint_; }

  /// Maximal dimension of a nondegenerate cell (-1 when empty).
  int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t size() const { return cells_.size(); }
  const Cell& cell(CellId c) const { return cells_.at(c); }
  int cell_dim(CellId c) const { return cells_.at(c).dim; }
  const std::string& label(CellId c) const { return cells_.at(c).label; }

  const std::vector<CellId>& cells_of_dim(int d) const {
    static const std::vector<CellId> empty;
    return (d < 0 || d >= static_cast<int>(by_dim_.size())) ? empty : by_dim_[d];
  }
  std::size_t count(int d) const { return cells_of_dim(d).size(); }
  /// Index of a cell among the cells of its dimension.
  std::size_t position(CellId c) const { return position_.at(c); }

  const SimplexRef& face(CellId c, int i) const { return cells_.at(c).faces.at(i); }

  std::optional<CellId> find(const std::string& label) const {
    auto it = by_label_.find(label);
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
  }

  CellId at(const std::string& label) const {
    auto id = find(label);
    if (!id) throw InvalidInput("no cell labelled '" + label + "' in " + name_);
    return *id;
  }

  int level(const SimplexRef& s) const { return cell_dim(s.cell) + static_cast<int>(s.degens.size()); }

  /// Nondegenerate cell counts per dimension.
  std::vector<std::size_t> cell_counts() const {
    std::vector<std::size_t> out;
    for (const auto& d : by_dim_) out.push_back(d.size());
    return out;
  }

  std::string simplex_label(const SimplexRef& s) const {
    std::string out;
    for (int d : s.degens) out += "s" + std::to_string(d);
    if (!out.empty()) out += " ";
    return out + label(s.cell);
  }

 private:
  std::string name_;
  std::vector<Cell> cells_;
  std::vector<std::vector<CellId>> by_dim_;
  std::vector<std::size_t> position_;
  std::map<std::string, CellId> by_label_;
  std::optional<CellId> basepoint_;
};

using SSetPtr = std::shared_ptr<const FiniteSimplicialSet>;

namespace detail {

inline SimplexRef resolve(const FiniteSimplicialSet& K, CellId c, MonotoneMap psi) {
  for (;;) {
    if (psi.surjective()) return {c, degens_of(psi)};
    const int d = psi.target;
    int missing = -1;
    for (int v = d; v >= 0; --v)
      if (std::find(psi.values.begin(), psi.values.end(), v) == psi.values.end()) {
        missing = v;
        break;
      }
    MonotoneMap reduced{d - 1, {}};
    for (int v : psi.values) reduced.values.push_back(v > missing ? v - 1 : v);
    const SimplexRef& f = K.face(c, missing);
    MonotoneMap eta = surjection_of(d - 1, f.degens);
    psi = eta.after(reduced);
    c = f.cell;
  }
}

}  // namespace detail

/// K(φ)(s) for a monotone φ : [p] -> [q] and a level-q simplex s.
inline SimplexRef apply_operator(const FiniteSimplicialSet& K, const MonotoneMap& phi, const SimplexRef& s) {
  if (!phi.valid()) throw InvalidInput("malformed monotone map");
  const int q = K.level(s);
  if (phi.target != q) throw InvalidInput("operator target does not match the simplex level");
  MonotoneMap eta = surjection_of(q, s.degens);
  return detail::resolve(K, s.cell, eta.after(phi));
}

/// d_i s
inline SimplexRef face_of(const FiniteSimplicialSet& K, const SimplexRef& s, int i) {
  const int n = K.level(s);
  if (n == 0 || i < 0 || i > n) throw InvalidInput("face index out of range");
  if (!s.degenerate()) return K.face(s.cell, i);
  return apply_operator(K, MonotoneMap::coface(n, i), s);
}

/// s_j s
inline SimplexRef degeneracy_of(const FiniteSimplicialSet& K, const SimplexRef& s, int j) {
  const int n = K.level(s);
  if (j < 0 || j > n) throw InvalidInput("degeneracy index out of range");
  return degenerate(s, n, MonotoneMap::codegeneracy(n, j));
}

/// All level-p simplices in canonical order (cell id, then degeneracy word).
inline std::vector<SimplexRef> level_simplices(const FiniteSimplicialSet& K, int p) {
  if (p < 0) throw InvalidInput("negative level");
  std::vector<SimplexRef> out;
  for (CellId c = 0; c < K.size(); ++c) {
    const int d = K.cell_dim(c);
    if (d > p) continue;
    for (auto& w : degeneracy_words(p, p - d)) out.push_back({c, std::move(w)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The level-p simplices with an index for lookup.
struct LevelIndex {
  int level = 0;
  std::vector<SimplexRef> simplices;
  std::unordered_map<SimplexRef, std::size_t, SimplexRefHash> index;

  LevelIndex() = default;
  LevelIndex(const FiniteSimplicialSet& K, int p, bool reversed = false) : level(p), simplices(level_simplices(K, p)) {
    if (reversed) std::reverse(simplices.begin(), simplices.end());
    for (std::size_t k = 0; k < simplices.size(); ++k) index.emplace(simplices[k], k);
  }

  std::size_t size() const { return simplices.size(); }
  std::size_t of(const SimplexRef& s) const {
    auto it = index.find(s);
    if (it == index.end()) throw InvalidInput("simplex not in level index");
    return it->second;
  }
};

/// First violated simplicial identity d_i d_j = d_{j-1} d_i (i < j), if any.
inline std::optional<std::string> check_simplicial_identities(const FiniteSimplicialSet& K) {
  for (CellId c = 0; c < K.size(); ++c) {
    const int n = K.cell_dim(c);
    if (n < 2) continue;
    SimplexRef s{c, {}};
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i) {
        SimplexRef a = face_of(K, face_of(K, s, j), i);
        SimplexRef b = face_of(K, face_of(K, s, i), j - 1);
        if (a != b)
          return "d_" + std::to_string(i) + " d_" + std::to_string(j) + " != d_" + std::to_string(j - 1) + " d_" +
                 std::to_string(i) + " on cell '" + K.label(c) + "'";
      }
  }
  return std::nullopt;
}

/// Throws InvalidInput when K violates a simplicial identity.
inline void validate(const FiniteSimplicialSet& K) {
  if (auto err = check_simplicial_identities(K)) throw InvalidInput(K.name() + ": " + *err);
}

/**
 * A simplicial map, stored by the images of nondegenerate source cells.
 */
class SimplicialMap {
 public:
  SimplicialMap() = default;
  SimplicialMap(SSetPtr source, SSetPtr target, std::vector<SimplexRef> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->size()) throw InvalidInput("simplicial map needs one image per source cell");
    for (CellId c = 0; c < source_->size(); ++c) {
      if (images_[c].cell >= target_->size()) throw InvalidInput("simplicial map image references an unknown cell");
      if (target_->level(images_[c]) != source_->cell_dim(c))
        throw InvalidInput("image of '" + source_->label(c) + "' has the wrong dimension");
    }
  }

  static SimplicialMap identity(SSetPtr K) {
    std::vector<SimplexRef> images;
    for (CellId c = 0; c < K->size(); ++c) images.push_back({c, {}});
    return SimplicialMap(K, K, std::move(images));
  }

  const FiniteSimplicialSet& source() const { return *source_; }
  const FiniteSimplicialSet& target() const { return *target_; }
  const SSetPtr& source_ptr() const { return source_; }
  const SSetPtr& target_ptr() const { return target_; }
  const SimplexRef& image(CellId c) const { return images_.at(c); }
  const std::vector<SimplexRef>& images() const { return images_; }

  SimplexRef apply(const SimplexRef& s) const {
    const int n = source_->level(s);
    return degenerate(images_.at(s.cell), source_->cell_dim(s.cell), surjection_of(n, s.degens));
  }

  /// after ∘ (*this)
  SimplicialMap then(const SimplicialMap& after) const {
    std::vector<SimplexRef> images;
    for (CellId c = 0; c < source_->size(); ++c) images.push_back(after.apply(images_[c]));
    return SimplicialMap(source_, after.target_, std::move(images));
  }

  /// Face compatibility f(d_i c) = d_i f(c) for every cell; first failure described.
  std::optional<std::string> check() const {
    for (CellId c = 0; c < source_->size(); ++c) {
      const int n = source_->cell_dim(c);
      for (int i = 0; n > 0 && i <= n; ++i) {
        SimplexRef lhs = apply(source_->face(c, i));
        SimplexRef rhs = face_of(*target_, images_[c], i);
        if (lhs != rhs)
          return "map does not commute with d_" + std::to_string(i) + " on cell '" + source_->label(c) + "'";
      }
    }
    return std::nullopt;
  }

  bool preserves_basepoint() const {
    if (!source_->pointed() || !target_->pointed()) return true;
    return images_[*source_->basepoint()] == SimplexRef{*target_->basepoint(), {}};
  }

  bool is_identity() const {
    if (source_ != target_ && source_->size() != target_->size()) return false;
    for (CellId c = 0; c < source_->size(); ++c)
      if (images_[c] != SimplexRef{c, {}}) return false;
    return true;
  }

  bool operator==(const SimplicialMap& other) const { return images_ == other.images_; }

 private:
  SSetPtr source_;
  SSetPtr target_;
  std::vector<SimplexRef> images_;
};

}  // namespace mapcoh
