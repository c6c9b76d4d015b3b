#include "ekrlab/family.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ekrlab {

namespace {

// Within-word patterns selecting bit positions whose index has bit i clear.
constexpr std::uint64_t kLowPattern[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

std::size_t word_count(const GroundSet& g) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(g.subset_count() >> 6));
}

std::uint64_t tail_mask(const GroundSet& g) {
  return g.n() >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.subset_count()) - 1;
}

void require_same_ground(const SetFamily& a, const SetFamily& b) {
  if (!(a.ground() == b.ground())) throw std::invalid_argument("ground-set mismatch");
}

void require_element(int i, const GroundSet& g) {
  if (i < 1 || i > g.n()) {
    throw std::invalid_argument("element " + std::to_string(i) + " outside [" + std::to_string(g.n()) + "]");
  }
}

}  // namespace

// --- GroundSet ----------------------------------------------------------------

GroundSet::GroundSet(int n, int max_n) : n_(n) {
  if (max_n > kHardMaxGround) throw std::invalid_argument("max ground size above hard limit 30");
  if (n < 1 || n > max_n) {
    throw std::invalid_argument("ground size n=" + std::to_string(n) + " outside [1, " + std::to_string(max_n) + "]");
  }
}

Mask mask_of(std::span<const int> elements, const GroundSet& ground) {
  Mask m = 0;
  for (int e : elements) {
    require_element(e, ground);
    m |= Mask{1} << (e - 1);
  }
  return m;
}

Mask mask_of(std::initializer_list<int> elements, const GroundSet& ground) {
  return mask_of(std::span<const int>(elements.begin(), elements.size()), ground);
}

std::vector<int> elements_of(Mask m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

std::string format_set(Mask m) {
  std::string s = "{";
  bool first = true;
  for (int e : elements_of(m)) {
    if (!first) s += ',';
    s += std::to_string(e);
    first = false;
  }
  return s + "}";
}

// --- SetFamily ----------------------------------------------------------------

SetFamily::SetFamily(GroundSet ground) : ground_(ground), bits_(word_count(ground), 0) {}

SetFamily::SetFamily(GroundSet ground, std::vector<std::uint64_t> bitmap)
    : ground_(ground), bits_(std::move(bitmap)) {
  if (bits_.size() != word_count(ground_)) throw std::invalid_argument("bitmap length does not match 2^n");
  if ((bits_.back() & ~tail_mask(ground_)) != 0) throw std::invalid_argument("bitmap has bits beyond 2^n");
}

std::uint64_t SetFamily::size() const {
  std::uint64_t total = 0;
  for (auto w : bits_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

bool SetFamily::empty() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<Mask> SetFamily::members() const {
  std::vector<Mask> out;
  for_each_member([&](Mask m) { out.push_back(m); });
  return out;
}

std::vector<std::uint64_t> SetFamily::level_counts() const {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n()) + 1, 0);
  for_each_member([&](Mask m) { ++counts[static_cast<std::size_t>(std::popcount(m))]; });
  return counts;
}

std::optional<int> SetFamily::uniform_level() const {
  std::optional<int> level;
  bool mixed = false;
  for_each_member([&](Mask m) {
    const int l = std::popcount(m);
    if (!level) level = l;
    else if (*level != l) mixed = true;
  });
  if (mixed) return std::nullopt;
  return level;
}

bool SetFamily::is_uniform(int k) const {
  bool ok = true;
  for_each_member([&](Mask m) { ok = ok && std::popcount(m) == k; });
  return ok;
}

bool SetFamily::is_increasing() const { return up_closure(*this) == *this; }

bool SetFamily::is_decreasing() const { return down_closure(*this) == *this; }

bool SetFamily::is_subfamily_of(const SetFamily& other) const {
  require_same_ground(*this, other);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    if ((bits_[w] & ~other.bits_[w]) != 0) return false;
  }
  return true;
}

// --- FamilyBuilder ------------------------------------------------------------

FamilyBuilder::FamilyBuilder(GroundSet ground) : ground_(ground), bits_(word_count(ground), 0) {}

void FamilyBuilder::add(Mask m) {
  if ((m & ~ground_.full_mask()) != 0) throw std::invalid_argument("set " + format_set(m) + " not inside [n]");
  bits_[m >> 6] |= std::uint64_t{1} << (m & 63);
}

void FamilyBuilder::remove(Mask m) {
  if ((m & ~ground_.full_mask()) != 0) return;
  bits_[m >> 6] &= ~(std::uint64_t{1} << (m & 63));
}

SetFamily FamilyBuilder::build() && { return SetFamily(ground_, std::move(bits_)); }

// --- constructions ------------------------------------------------------------

namespace {

std::vector<int> parse_int_list(std::string_view s) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = s.find(',', pos);
    if (end == std::string_view::npos) end = s.size();
    std::string_view tok = s.substr(pos, end - pos);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    if (!tok.empty()) {
      int v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw std::invalid_argument("bad integer '" + std::string(tok) + "'");
      }
      out.push_back(v);
    }
    pos = end + 1;
  }
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Construction parse_construction(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view() : text.substr(colon + 1);
  auto need = [&](std::size_t count, const std::vector<int>& v) {
    if (v.size() != count) throw std::invalid_argument("construction '" + std::string(text) + "' has wrong arity");
  };
  if (head == "dict") {
    auto v = parse_int_list(args);
    need(1, v);
    return construction::Dictatorship{v[0]};
  }
  if (head == "or") return construction::OrFamily{parse_int_list(args)};
  if (head == "sup") return construction::SupersetFamily{parse_int_list(args)};
  if (head == "subcube") {
    const auto slash = args.find('/');
    if (slash == std::string_view::npos) throw std::invalid_argument("subcube needs B/C");
    return construction::Subcube{parse_int_list(args.substr(0, slash)), parse_int_list(args.substr(slash + 1))};
  }
  if (head == "ff") {
    auto v = parse_int_list(args);
    need(2, v);
    return construction::FranklFuredi{v[0], v[1]};
  }
  if (head == "level") {
    auto v = parse_int_list(args);
    need(1, v);
    return construction::FullLevel{v[0]};
  }
  if (head == "empty") return construction::Empty{};
  if (head == "full") return construction::Full{};
  throw std::invalid_argument("unknown construction '" + std::string(text) + "'");
}

std::string describe(const Construction& c) {
  return std::visit(
      Overloaded{
          [](const construction::Dictatorship& d) { return "dict:" + std::to_string(d.j); },
          [](const construction::OrFamily& o) { return "or:" + join(o.r); },
          [](const construction::SupersetFamily& s) { return "sup:" + join(s.r); },
          [](const construction::Subcube& s) { return "subcube:" + join(s.b) + "/" + join(s.c); },
          [](const construction::FranklFuredi& f) { return "ff:" + std::to_string(f.r) + "," + std::to_string(f.t); },
          [](const construction::FullLevel& l) { return "level:" + std::to_string(l.k); },
          [](const construction::Empty&) { return std::string("empty"); },
          [](const construction::Full&) { return std::string("full"); },
      },
      c);
}

namespace {

template <class Pred>
SetFamily from_predicate(const GroundSet& g, Pred pred) {
  FamilyBuilder b(g);
  const Mask full = g.full_mask();
  for (std::uint64_t m = 0; m <= full; ++m) {
    if (pred(static_cast<Mask>(m))) b.add(static_cast<Mask>(m));
  }
  return std::move(b).build();
}

}  // namespace

SetFamily construct(const GroundSet& g, const Construction& c) {
  return std::visit(
      Overloaded{
          [&](const construction::Dictatorship& d) {
            require_element(d.j, g);
            const Mask bit = Mask{1} << (d.j - 1);
            return from_predicate(g, [bit](Mask m) { return (m & bit) != 0; });
          },
          [&](const construction::OrFamily& o) {
            const Mask r = mask_of(o.r, g);
            return from_predicate(g, [r](Mask m) { return (m & r) != 0; });
          },
          [&](const construction::SupersetFamily& s) {
            const Mask r = mask_of(s.r, g);
            return from_predicate(g, [r](Mask m) { return (m & r) == r; });
          },
          [&](const construction::Subcube& s) {
            const Mask b = mask_of(s.b, g);
            const Mask cm = mask_of(s.c, g);
            if ((cm & ~b) != 0) throw std::invalid_argument("subcube requires C subset of B");
            return from_predicate(g, [b, cm](Mask m) { return (m & b) == cm; });
          },
          [&](const construction::FranklFuredi& f) {
            if (f.r < 1 || f.t < 0 || f.r + f.t > g.n()) {
              throw std::invalid_argument("FranklFuredi requires r >= 1, t >= 0, r + t <= n");
            }
            const Mask head = (Mask{1} << (f.r - 1)) - 1;
            const Mask pivot = Mask{1} << (f.r - 1);
            const Mask tail = ((Mask{1} << f.t) - 1) << f.r;
            return from_predicate(g, [=](Mask m) { return (m & head) != 0 || ((m & pivot) != 0 && (m & tail) != 0); });
          },
          [&](const construction::FullLevel& l) {
            if (l.k < 0 || l.k > g.n()) throw std::invalid_argument("level outside [0, n]");
            return from_predicate(g, [k = l.k](Mask m) { return std::popcount(m) == k; });
          },
          [&](const construction::Empty&) { return SetFamily(g); },
          [&](const construction::Full&) { return from_predicate(g, [](Mask) { return true; }); },
      },
      c);
}

// --- operations ---------------------------------------------------------------

SetFamily build(const GroundSet& ground, std::span<const std::vector<int>> members) {
  FamilyBuilder b(ground);
  for (const auto& s : members) b.add(mask_of(s, ground));
  return std::move(b).build();
}

SetFamily build(const GroundSet& ground, std::initializer_list<std::vector<int>> members) {
  return build(ground, std::span<const std::vector<int>>(members.begin(), members.size()));
}

SetFamily build_from_masks(const GroundSet& ground, std::span<const Mask> members) {
  FamilyBuilder b(ground);
  for (Mask m : members) b.add(m);
  return std::move(b).build();
}

SetFamily slice(const SetFamily& f, int l) {
  if (l < 0 || l > f.n()) throw std::invalid_argument("slice level outside [0, n]");
  FamilyBuilder b(f.ground());
  f.for_each_member([&](Mask m) {
    if (std::popcount(m) == l) b.add(m);
  });
  return std::move(b).build();
}

SetFamily up_closure(const SetFamily& f) {
  std::vector<std::uint64_t> bits(f.words().begin(), f.words().end());
  for (int i = 0; i < f.n(); ++i) {
    if (i < 6) {
      const int s = 1 << i;
      for (auto& w : bits) w |= (w & kLowPattern[i]) << s;
    } else {
      const std::size_t stride = std::size_t{1} << (i - 6);
      for (std::size_t w = 0; w < bits.size(); ++w) {
        if (!(w & stride)) bits[w | stride] |= bits[w];
      }
    }
  }
  return SetFamily(f.ground(), std::move(bits));
}

SetFamily down_closure(const SetFamily& f) {
  std::vector<std::uint64_t> bits(f.words().begin(), f.words().end());
  for (int i = 0; i < f.n(); ++i) {
    if (i < 6) {
      const int s = 1 << i;
      for (auto& w : bits) w |= (w >> s) & kLowPattern[i];
    } else {
      const std::size_t stride = std::size_t{1} << (i - 6);
      for (std::size_t w = 0; w < bits.size(); ++w) {
        if (!(w & stride)) bits[w] |= bits[w | stride];
      }
    }
  }
  return SetFamily(f.ground(), std::move(bits));
}

SetFamily dual(const SetFamily& f) {
  FamilyBuilder b(f.ground());
  const Mask full = f.ground().full_mask();
  for (std::uint64_t m = 0; m <= full; ++m) {
    if (!f.contains(static_cast<Mask>(m))) b.add(full ^ static_cast<Mask>(m));
  }
  return std::move(b).build();
}

SetFamily toggle(const SetFamily& f, int i) {
  require_element(i, f.ground());
  const int bit = i - 1;
  std::vector<std::uint64_t> bits(f.words().begin(), f.words().end());
  if (bit < 6) {
    const int s = 1 << bit;
    for (auto& w : bits) w = ((w & kLowPattern[bit]) << s) | ((w >> s) & kLowPattern[bit]);
  } else {
    const std::size_t stride = std::size_t{1} << (bit - 6);
    for (std::size_t w = 0; w < bits.size(); ++w) {
      if (!(w & stride)) std::swap(bits[w], bits[w | stride]);
    }
  }
  return SetFamily(f.ground(), std::move(bits));
}

SetFamily restrict(const SetFamily& f, Mask b, Mask c) {
  const Mask full = f.ground().full_mask();
  if ((b & ~full) != 0) throw std::invalid_argument("B not inside [n]");
  if ((c & ~b) != 0) throw std::invalid_argument("restriction requires C subset of B");
  const int remaining = f.n() - std::popcount(b);
  if (remaining < 1) throw std::invalid_argument("restriction would leave an empty ground set");
  std::vector<int> kept;  // 0-based original positions of [n] \ B in order
  for (int i = 0; i < f.n(); ++i) {
    if (!((b >> i) & 1U)) kept.push_back(i);
  }
  const GroundSet g(remaining, std::max(remaining, kDefaultMaxGround));
  FamilyBuilder out(g);
  for (std::uint64_t m = 0; m <= g.full_mask(); ++m) {
    Mask original = c;
    for (int j = 0; j < remaining; ++j) {
      if ((m >> j) & 1U) original |= Mask{1} << kept[static_cast<std::size_t>(j)];
    }
    if (f.contains(original)) out.add(static_cast<Mask>(m));
  }
  return std::move(out).build();
}

bool is_intersecting(const SetFamily& f) { return are_cross_intersecting(f, f); }

bool are_cross_intersecting(const SetFamily& a, const SetFamily& b) {
  require_same_ground(a, b);
  // A and B fail to meet iff B is contained in [n] \ A, i.e. [n] \ A lies in up(B).
  const SetFamily up = up_closure(b);
  const Mask full = a.ground().full_mask();
  bool ok = true;
  a.for_each_member([&](Mask m) { ok = ok && !up.contains(full ^ m); });
  return ok;
}

int matching_number(const SetFamily& f) {
  const int n = f.n();
  std::vector<std::vector<Mask>> by_low(static_cast<std::size_t>(n));
  bool has_empty = false;
  f.for_each_member([&](Mask m) {
    if (m == 0) has_empty = true;
    else by_low[static_cast<std::size_t>(std::countr_zero(m))].push_back(m);
  });
  std::unordered_map<Mask, int> memo;
  auto best = [&](auto&& self, Mask universe) -> int {
    if (universe == 0) return 0;
    if (auto it = memo.find(universe); it != memo.end()) return it->second;
    const int low = std::countr_zero(universe);
    int value = self(self, universe & (universe - 1));
    // Each further set needs at least one element, so value <= popcount is a cap.
    for (Mask s : by_low[static_cast<std::size_t>(low)]) {
      if (value >= std::popcount(universe)) break;
      if ((s & ~universe) == 0) value = std::max(value, 1 + self(self, universe & ~s));
    }
    memo.emplace(universe, value);
    return value;
  };
  return best(best, f.ground().full_mask()) + (has_empty ? 1 : 0);
}

std::optional<int> dictatorship_index(const SetFamily& f) {
  if (f.size() != f.ground().subset_count() / 2) return std::nullopt;
  for (int j = 1; j <= f.n(); ++j) {
    if (f == construct(f.ground(), construction::Dictatorship{j})) return j;
  }
  return std::nullopt;
}

SetFamily boolean_algebra(const SetFamily& f, const SetFamily& g, SetOp op) {
  if (op != SetOp::complement) require_same_ground(f, g);
  std::vector<std::uint64_t> bits(f.words().begin(), f.words().end());
  const auto other = g.words();
  for (std::size_t w = 0; w < bits.size(); ++w) {
    switch (op) {
      case SetOp::union_: bits[w] |= other[w]; break;
      case SetOp::intersection: bits[w] &= other[w]; break;
      case SetOp::difference: bits[w] &= ~other[w]; break;
      case SetOp::symmetric_difference: bits[w] ^= other[w]; break;
      case SetOp::complement: bits[w] = ~bits[w]; break;
    }
  }
  bits.back() &= tail_mask(f.ground());
  return SetFamily(f.ground(), std::move(bits));
}

SetFamily family_union(const SetFamily& f, const SetFamily& g) { return boolean_algebra(f, g, SetOp::union_); }
SetFamily family_intersection(const SetFamily& f, const SetFamily& g) {
  return boolean_algebra(f, g, SetOp::intersection);
}
SetFamily family_difference(const SetFamily& f, const SetFamily& g) { return boolean_algebra(f, g, SetOp::difference); }
SetFamily family_symmetric_difference(const SetFamily& f, const SetFamily& g) {
  return boolean_algebra(f, g, SetOp::symmetric_difference);
}
SetFamily family_complement(const SetFamily& f) { return boolean_algebra(f, f, SetOp::complement); }

// --- text format --------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

SetFamily read_family(std::istream& in, int max_n) {
  std::string line;
  std::optional<GroundSet> ground;
  std::optional<FamilyBuilder> builder;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    auto fail = [&](const std::string& what) {
      throw std::invalid_argument("family file line " + std::to_string(line_no) + ": " + what);
    };
    if (!ground) {
      if (view.substr(0, 2) != "n=") fail("expected 'n=<int>' header");
      int n = 0;
      std::string_view num = trim(view.substr(2));
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
      if (ec != std::errc() || ptr != num.data() + num.size()) fail("bad ground size");
      ground.emplace(n, max_n);
      builder.emplace(*ground);
      continue;
    }
    if (view.substr(0, 5) == "mask=") {
      std::string_view hex = trim(view.substr(5));
      if (hex.substr(0, 2) == "0x" || hex.substr(0, 2) == "0X") hex.remove_prefix(2);
      Mask m = 0;
      auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), m, 16);
      if (ec != std::errc() || ptr != hex.data() + hex.size()) fail("bad hex mask");
      if ((m & ~ground->full_mask()) != 0) fail("mask outside [n]");
      builder->add(m);
      continue;
    }
    if (view.front() == '{') {
      if (view.back() != '}') fail("unbalanced braces");
      view = trim(view.substr(1, view.size() - 2));
    }
    std::vector<int> elems;
    try {
      elems = parse_int_list(view);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    for (int e : elems) {
      if (e < 1 || e > ground->n()) fail("element " + std::to_string(e) + " out of range");
    }
    builder->add(mask_of(elems, *ground));
  }
  if (!ground) throw std::invalid_argument("family file missing 'n=' header");
  return std::move(*builder).build();
}

SetFamily parse_family(std::string_view text, int max_n) {
  std::istringstream in{std::string(text)};
  return read_family(in, max_n);
}

void write_family(std::ostream& out, const SetFamily& f) {
  out << "n=" << f.n() << '\n';
  f.for_each_member([&](Mask m) {
    if (m == 0) {
      out << "{}\n";
      return;
    }
    const auto elems = elements_of(m);
    for (std::size_t i = 0; i < elems.size(); ++i) out << (i ? "," : "") << elems[i];
    out << '\n';
  });
}

std::string format_family(const SetFamily& f) {
  std::ostringstream out;
  write_family(out, f);
  return out.str();
}

SetFamily load_family_file(const std::string& path, int max_n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open family file '" + path + "'");
  return read_family(in, max_n);
}

void save_family_file(const std::string& path, const SetFamily& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write family file '" + path + "'");
  write_family(out, f);
}

}  // namespace ekrlab
