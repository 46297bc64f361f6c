#pragma once

#include <ostream>
#include <vector>

namespace reidkit {

// Step-decay schedule with an optional linear warmup ramp. Epochs are
// 1-based; the rate for epoch t applies to every iteration inside it.
struct LRSchedule {
  double base_lr = 3.5e-4;
  int warmup_epochs = 10;
  std::vector<int> decay_epochs = {40, 70};
  double decay_factor = 0.1;
  int total_epochs = 120;

  void validate() const;
};

// Learning rate at epoch t:
//   t <= warmup:   base_lr * t / warmup   (ramp ends at base_lr)
//   afterwards:    base_lr * decay_factor^k, k = decay epochs passed
// The decayed plateaus are evaluated as a division by (1/decay_factor)^k,
// which reproduces decimal values such as 3.5e-5 bit-exactly when the
// reciprocal of the factor is a small integer.
double lr_at(const LRSchedule& schedule, int epoch);

// Writes "epoch,lr" rows for every epoch of the schedule.
void dump_schedule_csv(const LRSchedule& schedule, std::ostream& out);

}  // namespace reidkit
