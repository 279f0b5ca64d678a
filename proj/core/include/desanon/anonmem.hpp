#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "desanon/config.hpp"
#include "desanon/permutation.hpp"
#include "desanon/trace.hpp"
#include "desanon/word.hpp"

namespace desanon {

/// The anonymous shared memory: m identical cells plus one adversary
/// permutation per process. A process addressing local index x actually
/// touches cell perm(x); protocol code never sees the permutations, the
/// harness and the checkers may.
class AnonymousMemory {
 public:
  AnonymousMemory(std::uint32_t n, std::uint32_t m, std::vector<Permutation> perms);

  std::uint32_t n() const { return n_; }
  std::uint32_t m() const { return m_; }

  std::uint32_t translate(int ordinal, std::uint32_t local) const;

  // Harness views.
  const RegisterWord& cell(std::uint32_t phys) const;
  const std::vector<RegisterWord>& cells() const { return cells_; }
  const Permutation& perm(int ordinal) const;

  bool operator==(const AnonymousMemory& other) const {
    return cells_ == other.cells_;
  }

 private:
  std::uint32_t n_;
  std::uint32_t m_;
  std::vector<RegisterWord> cells_;
  std::shared_ptr<const std::vector<Permutation>> perms_;

  RegisterWord& cell_mut(std::uint32_t phys);

  friend RegisterWord phys_read(AnonymousMemory&, int, std::uint32_t, Trace&,
                                const StepTag&);
  friend void phys_write_body(AnonymousMemory&, int, std::uint32_t, RegisterBody,
                              std::uint32_t, Trace&, const StepTag&);
  friend void phys_write_bit(AnonymousMemory&, int, std::uint32_t, std::uint8_t,
                             Trace&, const StepTag&);
  friend void harness_force_bit(AnonymousMemory&, int, std::uint32_t,
                                std::uint8_t, Trace&, const StepTag&);
};

/// Builds a memory from explicit permutations, validating the configuration.
AnonymousMemory make_memory(const Config& cfg, std::vector<Permutation> perms);

/// Draws n uniform permutations of {1..m} from the given seed.
std::vector<Permutation> random_permutations(std::uint32_t n, std::uint32_t m,
                                             std::uint64_t perm_seed);

/// One atomic read through the adversary translation; appended to the trace.
RegisterWord phys_read(AnonymousMemory& mem, int ordinal, std::uint32_t x,
                       Trace& tr, const StepTag& tag);

/// One atomic write of body and counter stamp; the bit is left untouched.
void phys_write_body(AnonymousMemory& mem, int ordinal, std::uint32_t x,
                     RegisterBody body, std::uint32_t ct, Trace& tr,
                     const StepTag& tag);

/// One atomic write of the bit only; body and stamp are left untouched.
/// Throws ProtocolViolation on an attempt to reset a set bit.
void phys_write_bit(AnonymousMemory& mem, int ordinal, std::uint32_t x,
                    std::uint8_t bit, Trace& tr, const StepTag& tag);

/// Non-atomic scan: m consecutive reads at local indices 1..m. Inside the
/// protocol scans are issued one read per scheduler turn; this helper is for
/// harness code that wants the whole pass at once (still m trace entries).
std::vector<RegisterWord> scan(AnonymousMemory& mem, int ordinal, Trace& tr,
                               const StepTag& tag);

/// Unchecked bit write used only by the BitReset mutant; bypasses the
/// monotonicity guard but still records a WRITE trace entry.
void harness_force_bit(AnonymousMemory& mem, int ordinal, std::uint32_t x,
                       std::uint8_t bit, Trace& tr, const StepTag& tag);

}  // namespace desanon
