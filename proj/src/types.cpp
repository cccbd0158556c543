#include "hcsig/types.hpp"

#include "hcsig/errors.hpp"

namespace hcsig {

char party_letter(Party p) noexcept {
  switch (p) {
    case Party::A: return 'A';
    case Party::B: return 'B';
    case Party::C: return 'C';
  }
  return '?';
}

std::vector<Party> PartySet::members() const {
  std::vector<Party> out;
  for (Party p : kParties) {
    if (contains(p)) out.push_back(p);
  }
  return out;
}

std::string PartySet::to_string() const {
  std::string out;
  for (Party p : members()) out.push_back(party_letter(p));
  return out;
}

OutcomeTriple::OutcomeTriple(int a, int b, int c) : signs_{a, b, c} {
  for (int s : signs_) {
    if (s != 1 && s != -1) {
      throw Error(ErrorCode::InvalidArgument,
                  "outcome components must be +1 or -1, got " + std::to_string(s));
    }
  }
}

OutcomeTriple OutcomeTriple::from_index(int outcome_index) {
  if (outcome_index < 0 || outcome_index >= kOutcomeCount) {
    throw Error(ErrorCode::InvalidArgument,
                "outcome index out of range: " + std::to_string(outcome_index));
  }
  return {outcome_sign(outcome_index, Party::A), outcome_sign(outcome_index, Party::B),
          outcome_sign(outcome_index, Party::C)};
}

int OutcomeTriple::index() const noexcept {
  int index = 0;
  for (Party p : kParties) {
    if (signs_[party_index(p)] < 0) index |= 1 << party_shift(p);
  }
  return index;
}

std::string OutcomeTriple::label() const { return outcome_label(index()); }

std::string outcome_label(int outcome_index) {
  std::string out;
  for (Party p : kParties) out.push_back(outcome_sign(outcome_index, p) > 0 ? '+' : '-');
  return out;
}

}  // namespace hcsig
