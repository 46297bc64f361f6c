#include "reidkit/schedule.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace reidkit {

void LRSchedule::validate() const {
  if (base_lr <= 0.0) throw std::invalid_argument("schedule: base_lr must be positive");
  if (warmup_epochs < 0) throw std::invalid_argument("schedule: warmup_epochs must be >= 0");
  if (!(decay_factor > 0.0 && decay_factor < 1.0))
    throw std::invalid_argument("schedule: decay_factor must lie in (0, 1)");
  if (total_epochs < 1) throw std::invalid_argument("schedule: total_epochs must be >= 1");
  int prev = warmup_epochs;
  for (int e : decay_epochs) {
    if (e <= prev)
      throw std::invalid_argument(
          "schedule: decay epochs must be strictly increasing and after warmup");
    prev = e;
  }
}

double lr_at(const LRSchedule& schedule, int epoch) {
  if (epoch < 1 || epoch > schedule.total_epochs)
    throw std::out_of_range("schedule: epoch " + std::to_string(epoch) + " outside [1, " +
                            std::to_string(schedule.total_epochs) + "]");
  if (schedule.warmup_epochs > 0 && epoch <= schedule.warmup_epochs) {
    if (epoch == schedule.warmup_epochs) return schedule.base_lr;
    return schedule.base_lr * static_cast<double>(epoch) /
           static_cast<double>(schedule.warmup_epochs);
  }
  int passed = 0;
  for (int e : schedule.decay_epochs)
    if (epoch > e) ++passed;
  if (passed == 0) return schedule.base_lr;
  return schedule.base_lr / std::pow(1.0 / schedule.decay_factor, passed);
}

void dump_schedule_csv(const LRSchedule& schedule, std::ostream& out) {
  schedule.validate();
  out << "epoch,lr\n";
  const auto flags = out.flags();
  out.precision(17);
  for (int t = 1; t <= schedule.total_epochs; ++t) out << t << "," << lr_at(schedule, t) << "\n";
  out.flags(flags);
}

}  // namespace reidkit
