#include "desanon/anonmem.hpp"

#include <random>
#include <string>

#include "desanon/errors.hpp"

namespace desanon {

AnonymousMemory::AnonymousMemory(std::uint32_t n, std::uint32_t m,
                                 std::vector<Permutation> perms)
    : n_(n), m_(m) {
  if (n < 2) throw ConfigError("anonymous memory needs n >= 2 processes");
  if (m < 1) throw ConfigError("anonymous memory needs m >= 1 registers");
  if (perms.size() != n) {
    throw ConfigError("expected one permutation per process (" +
                      std::to_string(n) + "), got " +
                      std::to_string(perms.size()));
  }
  for (const auto& p : perms) {
    if (p.size() != m) throw ConfigError("permutation size does not match m");
  }
  cells_.assign(m, RegisterWord{});  // all cells identical: bit 0, ct 0, BOTTOM
  perms_ = std::make_shared<const std::vector<Permutation>>(std::move(perms));
}

std::uint32_t AnonymousMemory::translate(int ordinal, std::uint32_t local) const {
  return perm(ordinal).apply(local);
}

const RegisterWord& AnonymousMemory::cell(std::uint32_t phys) const {
  if (phys < 1 || phys > m_) throw ConfigError("physical index out of range");
  return cells_[phys - 1];
}

RegisterWord& AnonymousMemory::cell_mut(std::uint32_t phys) {
  if (phys < 1 || phys > m_) throw ConfigError("physical index out of range");
  return cells_[phys - 1];
}

const Permutation& AnonymousMemory::perm(int ordinal) const {
  if (ordinal < 1 || static_cast<std::uint32_t>(ordinal) > n_) {
    throw ConfigError("process ordinal out of range");
  }
  return (*perms_)[static_cast<size_t>(ordinal) - 1];
}

AnonymousMemory make_memory(const Config& cfg, std::vector<Permutation> perms) {
  validate_config(cfg);
  return AnonymousMemory(cfg.n, cfg.m, std::move(perms));
}

std::vector<Permutation> random_permutations(std::uint32_t n, std::uint32_t m,
                                             std::uint64_t perm_seed) {
  std::mt19937_64 rng(perm_seed);
  std::vector<Permutation> out;
  out.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(Permutation::random(m, rng));
  return out;
}

RegisterWord phys_read(AnonymousMemory& mem, int ordinal, std::uint32_t x,
                       Trace& tr, const StepTag& tag) {
  const std::uint32_t phys = mem.translate(ordinal, x);
  const RegisterWord w = mem.cell(phys);
  append_access(tr, ordinal, EntryKind::Read, x, phys, w, w, tag);
  return w;
}

void phys_write_body(AnonymousMemory& mem, int ordinal, std::uint32_t x,
                     RegisterBody body, std::uint32_t ct, Trace& tr,
                     const StepTag& tag) {
  const std::uint32_t phys = mem.translate(ordinal, x);
  RegisterWord& cell = mem.cell_mut(phys);
  const RegisterWord before = cell;
  cell.body = std::move(body);
  cell.ct = ct;  // bit deliberately untouched
  append_access(tr, ordinal, EntryKind::Write, x, phys, before, cell, tag);
}

void phys_write_bit(AnonymousMemory& mem, int ordinal, std::uint32_t x,
                    std::uint8_t bit, Trace& tr, const StepTag& tag) {
  const std::uint32_t phys = mem.translate(ordinal, x);
  RegisterWord& cell = mem.cell_mut(phys);
  if (cell.bit == 1 && bit == 0) {
    throw ProtocolViolation("attempt to reset a completion bit");
  }
  const RegisterWord before = cell;
  cell.bit = bit;  // body and stamp deliberately untouched
  append_access(tr, ordinal, EntryKind::Write, x, phys, before, cell, tag);
}

std::vector<RegisterWord> scan(AnonymousMemory& mem, int ordinal, Trace& tr,
                               const StepTag& tag) {
  std::vector<RegisterWord> snap;
  snap.reserve(mem.m());
  for (std::uint32_t x = 1; x <= mem.m(); ++x) {
    snap.push_back(phys_read(mem, ordinal, x, tr, tag));
  }
  return snap;
}

void harness_force_bit(AnonymousMemory& mem, int ordinal, std::uint32_t x,
                       std::uint8_t bit, Trace& tr, const StepTag& tag) {
  const std::uint32_t phys = mem.translate(ordinal, x);
  RegisterWord& cell = mem.cell_mut(phys);
  const RegisterWord before = cell;
  cell.bit = bit;
  append_access(tr, ordinal, EntryKind::Write, x, phys, before, cell, tag);
}

}  // namespace desanon
