#include "desanon/sim.hpp"

#include <cstring>

#include "desanon/errors.hpp"

namespace desanon {
namespace {

void put_u8(std::string& s, std::uint8_t v) { s.push_back(static_cast<char>(v)); }

void put_u32(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& s, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_value(std::string& s, const RegisterValue& v) {
  put_u8(s, v.has_value() ? 1 : 0);
  put_u64(s, v.has_value() ? IdAccess::token(*v) : 0);
}

void put_word(std::string& s, const RegisterWord& w) {
  put_u8(s, w.bit);
  put_u32(s, w.ct);
  put_u8(s, static_cast<std::uint8_t>(w.body.index()));
  if (const auto* mv = std::get_if<MutexVal>(&w.body)) {
    put_value(s, mv->val);
  } else if (const auto* dv = std::get_if<DesaVal>(&w.body)) {
    put_u32(s, dv->y);
  } else if (const auto* iv = std::get_if<IndexedMutexVal>(&w.body)) {
    put_u32(s, iv->y);
    put_value(s, iv->val);
  } else if (const auto* av = std::get_if<ApplVal>(&w.body)) {
    put_u32(s, av->y);
    put_u32(s, static_cast<std::uint32_t>(av->payload.size()));
    s.append(av->payload);
  }
}

}  // namespace

World::World(const Config& cfg, std::vector<Permutation> perms,
             std::vector<std::uint64_t> id_tokens)
    : mem_(make_memory(cfg, std::move(perms))) {
  if (id_tokens.empty()) {
    id_tokens.resize(cfg.n);
    for (std::uint32_t i = 0; i < cfg.n; ++i) id_tokens[i] = i + 1;
  }
  if (id_tokens.size() != cfg.n) {
    throw ConfigError("expected one identity token per process");
  }
  for (size_t i = 0; i < id_tokens.size(); ++i) {
    for (size_t j = i + 1; j < id_tokens.size(); ++j) {
      if (id_tokens[i] == id_tokens[j]) {
        throw ConfigError("process identities must be pairwise distinct");
      }
    }
  }
  ctx_ = std::make_shared<const WorldContext>(WorldContext{cfg, id_tokens});
  procs_.reserve(cfg.n);
  for (std::uint32_t i = 0; i < cfg.n; ++i) {
    procs_.emplace_back(IdAccess::make(id_tokens[i]), static_cast<int>(i) + 1);
  }
}

bool World::all_done() const {
  for (const auto& p : procs_) {
    if (p.pc != DesaPc::Done) return false;
  }
  return true;
}

bool World::enabled(int ordinal) const {
  return process(ordinal).pc != DesaPc::Done;
}

std::vector<int> World::enabled_ordinals() const {
  std::vector<int> out;
  for (const auto& p : procs_) {
    if (p.pc != DesaPc::Done) out.push_back(p.ordinal);
  }
  return out;
}

void World::step(int ordinal, Trace& tr) {
  if (ordinal < 1 || static_cast<std::uint32_t>(ordinal) > n()) {
    throw ConfigError("process ordinal out of range");
  }
  const size_t mark = tr.size();
  desa_step(*this, ordinal, tr);
  const auto& p = process(ordinal);
  for (size_t i = mark; i < tr.size(); ++i) tr[i].ct_after = p.ct;
}

std::string World::state_key() const {
  std::string s;
  s.reserve(64 + 16 * mem_.m() + 64 * procs_.size());
  for (const auto& cell : mem_.cells()) put_word(s, cell);
  for (const auto& p : procs_) {
    put_u8(s, static_cast<std::uint8_t>(p.pc));
    put_u32(s, p.ct);
    put_u8(s, p.last1 ? 1 : 0);
    put_u8(s, p.last2 ? 1 : 0);
    put_u32(s, p.k);
    put_u32(s, p.scan_k);
    put_u32(s, static_cast<std::uint32_t>(p.sm.size()));
    for (const auto& w : p.sm) put_word(s, w);
    put_u32(s, static_cast<std::uint32_t>(p.bits.size()));
    for (auto b : p.bits) put_u8(s, b);
    put_u8(s, p.map.has_value() ? 1 : 0);
    if (p.map.has_value()) {
      for (auto v : p.map->table()) put_u32(s, v);
    }
    put_u8(s, static_cast<std::uint8_t>(p.mx.phase));
    put_u32(s, p.mx.k);
    put_u8(s, p.mx.pending_write ? 1 : 0);
    put_u8(s, p.mx.writes_this_epoch);
    put_u8(s, p.mx.acquires_done);
  }
  put_u32(s, static_cast<std::uint32_t>(arb_.queue.size()));
  for (int q : arb_.queue) put_u32(s, static_cast<std::uint32_t>(q));
  put_u8(s, arb_.holder.has_value() ? 1 : 0);
  put_u32(s, arb_.holder.has_value() ? static_cast<std::uint32_t>(*arb_.holder) : 0);
  return s;
}

}  // namespace desanon
