#pragma once

// Set families over a ground set [n] = {1, ..., n}, stored as a dense
// membership bitmap over all 2^n subsets. Element i corresponds to bit i-1 of
// a subset's characteristic mask, so mask 0b101 is the set {1, 3}.
//
// Families are immutable values; every operation returns a new family.

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ekrlab {

using Mask = std::uint32_t;

inline constexpr int kDefaultMaxGround = 24;
inline constexpr int kHardMaxGround = 30;

class GroundSet {
 public:
  /// Throws std::invalid_argument unless 1 <= n <= max_n (max_n <= 30).
  explicit GroundSet(int n, int max_n = kDefaultMaxGround);

  int n() const { return n_; }
  Mask full_mask() const { return n_ == 32 ? ~Mask{0} : (Mask{1} << n_) - 1; }
  std::uint64_t subset_count() const { return std::uint64_t{1} << n_; }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  int n_;
};

/// Characteristic mask of a set of 1-based elements; throws on out-of-range
/// elements.
Mask mask_of(std::span<const int> elements, const GroundSet& ground);
Mask mask_of(std::initializer_list<int> elements, const GroundSet& ground);
std::vector<int> elements_of(Mask m);
/// "{1,3}" style rendering; "{}" for the empty set.
std::string format_set(Mask m);

class SetFamily {
 public:
  /// The empty family on `ground`.
  explicit SetFamily(GroundSet ground);
  /// Adopts a raw bitmap; it must hold exactly max(1, 2^n / 64) words with
  /// no bits set past position 2^n.
  SetFamily(GroundSet ground, std::vector<std::uint64_t> bitmap);

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.n(); }

  bool contains(Mask m) const { return (bits_[m >> 6] >> (m & 63)) & 1U; }
  std::uint64_t size() const;
  bool empty() const;

  /// Members in increasing mask order (which is colex order within a level).
  std::vector<Mask> members() const;

  template <class Fn>
  void for_each_member(Fn&& fn) const {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word != 0) {
        const int b = __builtin_ctzll(word);
        fn(static_cast<Mask>((w << 6) | static_cast<std::size_t>(b)));
        word &= word - 1;
      }
    }
  }

  /// a_l = number of members of size l, for l = 0..n.
  std::vector<std::uint64_t> level_counts() const;
  /// The common size of all members; nullopt for the empty family or mixed sizes.
  std::optional<int> uniform_level() const;
  bool is_uniform(int k) const;

  bool is_increasing() const;
  bool is_decreasing() const;
  bool is_subfamily_of(const SetFamily& other) const;

  std::span<const std::uint64_t> words() const { return bits_; }

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  GroundSet ground_;
  std::vector<std::uint64_t> bits_;
};

/// Mutable accumulator used to assemble a family before freezing it.
class FamilyBuilder {
 public:
  explicit FamilyBuilder(GroundSet ground);
  void add(Mask m);
  void remove(Mask m);
  bool contains(Mask m) const { return (bits_[m >> 6] >> (m & 63)) & 1U; }
  const GroundSet& ground() const { return ground_; }
  SetFamily build() &&;

 private:
  GroundSet ground_;
  std::vector<std::uint64_t> bits_;
};

// --- named constructions -------------------------------------------------

namespace construction {
/// {S : j in S}.
struct Dictatorship { int j; };
/// OR_R = {S : S meets R}.
struct OrFamily { std::vector<int> r; };
/// S_R = {S : R subset of S}.
struct SupersetFamily { std::vector<int> r; };
/// {S : S cap B = C}, C subset of B.
struct Subcube { std::vector<int> b; std::vector<int> c; };
/// x_1 v ... v x_{r-1} v (x_r ^ (x_{r+1} v ... v x_{r+t})).
struct FranklFuredi { int r; int t; };
/// All sets of size k.
struct FullLevel { int k; };
struct Empty {};
struct Full {};
}  // namespace construction

using Construction =
    std::variant<construction::Dictatorship, construction::OrFamily, construction::SupersetFamily,
                 construction::Subcube, construction::FranklFuredi, construction::FullLevel,
                 construction::Empty, construction::Full>;

/// Parses "dict:1", "or:1,2", "sup:1,2", "subcube:1,2/1", "ff:2,2",
/// "level:3", "empty", "full".
Construction parse_construction(std::string_view text);
std::string describe(const Construction& c);

// --- operations -----------------------------------------------------------

/// Family with exactly the listed members; duplicates collapse.
SetFamily build(const GroundSet& ground, std::span<const std::vector<int>> members);
SetFamily build(const GroundSet& ground, std::initializer_list<std::vector<int>> members);
SetFamily build_from_masks(const GroundSet& ground, std::span<const Mask> members);

SetFamily construct(const GroundSet& ground, const Construction& c);

/// Members of size exactly l; throws unless 0 <= l <= n.
SetFamily slice(const SetFamily& f, int l);

SetFamily up_closure(const SetFamily& f);
SetFamily down_closure(const SetFamily& f);

/// F* = {[n] \ A : A not in F}.
SetFamily dual(const SetFamily& f);

/// {S△{i} : S in F} for element i (1-based).
SetFamily toggle(const SetFamily& f, int i);

/// F_B^C = {S subset of [n] \ B : S u C in F}, re-indexed onto [n - |B|]:
/// the elements of [n] \ B keep their relative order and are renumbered
/// 1, 2, .... Throws unless C subset of B subset of [n] and |B| < n.
SetFamily restrict(const SetFamily& f, Mask b, Mask c);

/// Every pair of members (including a member with itself) intersects, so
/// {∅} is not intersecting and the empty family is.
bool is_intersecting(const SetFamily& f);
bool are_cross_intersecting(const SetFamily& a, const SetFamily& b);

/// Maximum number of pairwise disjoint members. The empty set is disjoint
/// from everything (including itself) but, being one member, adds at most 1.
int matching_number(const SetFamily& f);

/// j if f is exactly the dictatorship {S : j in S} on P([n]).
std::optional<int> dictatorship_index(const SetFamily& f);

enum class SetOp { union_, intersection, difference, symmetric_difference, complement };

/// Standard set algebra on membership bitmaps; `complement` ignores g.
SetFamily boolean_algebra(const SetFamily& f, const SetFamily& g, SetOp op);
SetFamily family_union(const SetFamily& f, const SetFamily& g);
SetFamily family_intersection(const SetFamily& f, const SetFamily& g);
SetFamily family_difference(const SetFamily& f, const SetFamily& g);
SetFamily family_symmetric_difference(const SetFamily& f, const SetFamily& g);
SetFamily family_complement(const SetFamily& f);

// --- text format ------------------------------------------------------------
//
//   n=<int>
//   # comment
//   1,2,5        one member per line
//   {}           the empty set
//   mask=1f      characteristic mask in hex
//
// Writing lists members in increasing mask order, so write/read is identity.

SetFamily read_family(std::istream& in, int max_n = kDefaultMaxGround);
SetFamily parse_family(std::string_view text, int max_n = kDefaultMaxGround);
void write_family(std::ostream& out, const SetFamily& f);
std::string format_family(const SetFamily& f);
SetFamily load_family_file(const std::string& path, int max_n = kDefaultMaxGround);
void save_family_file(const std::string& path, const SetFamily& f);

}  // namespace ekrlab
