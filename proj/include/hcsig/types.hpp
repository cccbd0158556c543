#pragma once

// Party, outcome and basis-index conventions shared by every module.
//
// Basis and outcome indices run 0..7 with party A in the most significant
// bit: index = 4*bit(A) + 2*bit(B) + bit(C). Bit 0 is the +1 outcome (the
// |0> eigenstate of sigma_z), bit 1 is the -1 outcome. So index 0 is "+++"
// and |000>, index 7 is "---" and |111>.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace hcsig {

enum class Party : std::uint8_t { A = 0, B = 1, C = 2 };

inline constexpr std::array<Party, 3> kParties{Party::A, Party::B, Party::C};
inline constexpr int kOutcomeCount = 8;

constexpr int party_index(Party p) noexcept { return static_cast<int>(p); }

// Bit position of a party inside a basis/outcome index.
constexpr int party_shift(Party p) noexcept { return 2 - party_index(p); }

char party_letter(Party p) noexcept;

// +1 or -1: the outcome of `p` encoded in `outcome_index`.
constexpr int outcome_sign(int outcome_index, Party p) noexcept {
  return ((outcome_index >> party_shift(p)) & 1) != 0 ? -1 : 1;
}

// Small set of parties stored as a bitmask over party_index.
class PartySet {
 public:
  constexpr PartySet() = default;
  constexpr PartySet(std::initializer_list<Party> parties) {
    for (Party p : parties) insert(p);
  }

  constexpr void insert(Party p) noexcept {
    mask_ |= static_cast<std::uint8_t>(1u << party_index(p));
  }
  constexpr bool contains(Party p) const noexcept {
    return (mask_ >> party_index(p)) & 1u;
  }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  constexpr int size() const noexcept {
    return ((mask_ >> 0) & 1) + ((mask_ >> 1) & 1) + ((mask_ >> 2) & 1);
  }
  constexpr std::uint8_t mask() const noexcept { return mask_; }

  // Members in A, B, C order.
  std::vector<Party> members() const;
  std::string to_string() const;  // e.g. "BC"

  friend constexpr bool operator==(PartySet, PartySet) = default;

 private:
  std::uint8_t mask_ = 0;
};

// One +/-1 result per party.
class OutcomeTriple {
 public:
  // Throws Error(InvalidArgument) unless every entry is exactly +1 or -1.
  OutcomeTriple(int a, int b, int c);

  static OutcomeTriple from_index(int outcome_index);

  int operator[](Party p) const noexcept { return signs_[party_index(p)]; }
  int index() const noexcept;
  std::string label() const;  // "+-+"

  friend bool operator==(const OutcomeTriple&, const OutcomeTriple&) = default;

 private:
  std::array<int, 3> signs_;
};

// "+++" .. "---" in index order.
std::string outcome_label(int outcome_index);

}  // namespace hcsig
