#pragma once

#include <cstddef>

namespace ldsolve {

inline constexpr std::size_t kDefaultStepCeiling = 1'000'000;

// Thrown by StepBudget::tick; callers that know the constraint index translate
// it into StepCeilingExceeded.
struct BudgetExhausted {
  std::size_t ceiling;
};

class StepBudget {
 public:
  explicit StepBudget(std::size_t ceiling = kDefaultStepCeiling) : ceiling_(ceiling) {}

  void tick(std::size_t n = 1) {
    used_ += n;
    if (used_ > ceiling_) throw BudgetExhausted{ceiling_};
  }
  std::size_t used() const noexcept { return used_; }
  std::size_t ceiling() const noexcept { return ceiling_; }

 private:
  std::size_t ceiling_;
  std::size_t used_ = 0;
};

}  // namespace ldsolve
