#pragma once

#include "twoitem/rational.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace twoitem {

inline constexpr std::size_t kItems = 2;

/// Default limit on the number of enumerated profiles (4^10).
inline constexpr std::size_t kDefaultProfileCap = std::size_t{1} << 20;

class SpecError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an exhaustive enumeration would exceed the configured cap.
class CapExceeded : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// The instance (n, p, a, b): n buyers, two items, every valuation an
/// independent draw that equals a with probability p and b otherwise.
class AuctionSpec
{
public:
  /// Throws SpecError unless n >= 2, 0 < p < 1 and 0 <= a < b.
  AuctionSpec(int n, Rational p, Rational a, Rational b);

  /// Same checks except n >= 1 is accepted; for exploratory LP runs only.
  static AuctionSpec exploratory(int n, Rational p, Rational a, Rational b);

  int n() const
  {
    return n_;
  }
  Rational const &p() const
  {
    return p_;
  }
  Rational const &a() const
  {
    return a_;
  }
  Rational const &b() const
  {
    return b_;
  }
  bool is_exploratory() const
  {
    return n_ < 2;
  }

  std::string str() const;

  friend bool operator==(AuctionSpec const &, AuctionSpec const &) = default;

private:
  struct Unchecked
  {};
  AuctionSpec(Unchecked, int n, Rational p, Rational a, Rational b);

  int      n_;
  Rational p_;
  Rational a_;
  Rational b_;
};

enum class Level : std::uint8_t
{
  Low,   // a
  High,  // b
};

/// A buyer's type (t^1, t^2) in {a, b} x {a, b}.
struct BuyerType
{
  Level item1 = Level::Low;
  Level item2 = Level::Low;

  Level operator[](std::size_t item) const
  {
    return item == 0 ? item1 : item2;
  }

  /// Position in the order (a,a) < (a,b) < (b,a) < (b,b).
  std::size_t index() const
  {
    return 2 * static_cast<std::size_t>(item1) + static_cast<std::size_t>(item2);
  }
  static BuyerType from_index(std::size_t index);
  /// "aa", "ab", "ba" or "bb". Throws SpecError on anything else.
  static BuyerType parse(std::string const &text);
  std::string str() const;

  bool is_low() const
  {
    return item1 == Level::Low && item2 == Level::Low;
  }
  bool is_high() const
  {
    return item1 == Level::High && item2 == Level::High;
  }
  BuyerType swapped() const
  {
    return {item2, item1};
  }

  friend bool operator==(BuyerType const &, BuyerType const &) = default;
};

inline constexpr BuyerType kAA{Level::Low, Level::Low};
inline constexpr BuyerType kAB{Level::Low, Level::High};
inline constexpr BuyerType kBA{Level::High, Level::Low};
inline constexpr BuyerType kBB{Level::High, Level::High};

Rational const &value_of(AuctionSpec const &spec, Level level);

/// Row i is buyer i's type; column j is item j.
struct TypeProfile
{
  std::vector<BuyerType> rows;

  std::size_t size() const
  {
    return rows.size();
  }
  BuyerType const &operator[](std::size_t buyer) const
  {
    return rows[buyer];
  }
  BuyerType &operator[](std::size_t buyer)
  {
    return rows[buyer];
  }

  std::size_t count_low_entries() const;
  /// Copy with buyer's row replaced.
  TypeProfile with(std::size_t buyer, BuyerType type) const;
  /// Copy with the two item columns exchanged.
  TypeProfile items_swapped() const;
  /// Compact form such as "bb,ab".
  std::string str() const;

  friend bool operator==(TypeProfile const &, TypeProfile const &) = default;
};

Rational profile_probability(AuctionSpec const &spec, TypeProfile const &profile);

/// Index of `profile` in the lexicographic enumeration (buyer 1 outermost).
std::size_t profile_index(TypeProfile const &profile);
TypeProfile profile_at(std::size_t n, std::size_t index);

struct WeightedProfile
{
  TypeProfile profile;
  Rational    probability;
};

/// All 4^n profiles in lexicographic order with their probabilities.
/// Throws CapExceeded when 4^n > cap.
std::vector<WeightedProfile> enumerate_profiles(AuctionSpec const &spec, std::size_t cap = kDefaultProfileCap);

/// 4^n, or nullopt if it exceeds cap.
std::optional<std::size_t> profile_count(std::size_t n, std::size_t cap = kDefaultProfileCap);

/// Rank-based allocation of a single item. Level d holds the types of rank
/// d; unlisted types have infinite rank.
class HierarchyScheme
{
public:
  HierarchyScheme() = default;
  /// Throws SpecError if a type is listed in two levels.
  explicit HierarchyScheme(std::vector<std::vector<BuyerType>> levels);
  /// Singleton levels, one type per rank.
  static HierarchyScheme ranked(std::vector<BuyerType> order);

  std::optional<std::size_t> rank(BuyerType type) const;
  std::vector<std::vector<BuyerType>> const &levels() const
  {
    return levels_;
  }
  std::string str() const;

  friend bool operator==(HierarchyScheme const &, HierarchyScheme const &) = default;

private:
  std::vector<std::vector<BuyerType>> levels_;
};

/// Per-buyer share of one item: the buyers of minimum finite rank split it
/// equally; nobody receives anything if every rank is infinite.
std::vector<Rational> allocate_hierarchy(HierarchyScheme const &scheme, TypeProfile const &profile);

/// q_i^j for every buyer i and item j.
struct Allocation
{
  std::vector<std::array<Rational, kItems>> shares;

  explicit Allocation(std::size_t buyers = 0)
    : shares(buyers)
  {}

  std::size_t buyers() const
  {
    return shares.size();
  }
  Rational item_total(std::size_t item) const;
  /// Every share in [0, 1] and every item total at most 1.
  bool feasible() const;

  friend bool operator==(Allocation const &, Allocation const &) = default;
};

/// Allocation from one hierarchy per item.
Allocation allocate_hierarchies(HierarchyScheme const &item1, HierarchyScheme const &item2,
                                TypeProfile const &profile);

enum class ProfileClass
{
  S0,     // the all-low profile
  S1,     // one cheap item, a single buyer not of type (a,a)
  S2,     // one cheap item, two or more such buyers
  Other,  // no cheap item
};

char const *to_string(ProfileClass cls);

struct Classification
{
  ProfileClass             cls = ProfileClass::Other;
  std::array<bool, kItems> cheap{};
  /// Buyers whose type differs from (a,a).
  std::vector<std::size_t> active;

  std::size_t cheap_count() const
  {
    return static_cast<std::size_t>(cheap[0]) + static_cast<std::size_t>(cheap[1]);
  }
};

Classification classify_profile(TypeProfile const &profile);

/// True when exactly one item column is all-low. Also meaningful for a
/// partial profile t_{-i}.
bool is_one_cheap(std::vector<BuyerType> const &rows);
std::size_t count_active(std::vector<BuyerType> const &rows);

struct ClassMasses
{
  Rational p0;
  Rational p1;
  Rational p2;
};

/// Closed forms p0 = p^(2n), p1 = 2n p^(2n-1)(1-p),
/// p2 = 2 p^n (1 - p^n - n p^(n-1)(1-p)).
ClassMasses class_probabilities(AuctionSpec const &spec);

}  // namespace twoitem
