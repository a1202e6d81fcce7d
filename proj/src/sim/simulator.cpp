// Copyright 2026 The hflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hflow/sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>

#include "hflow/common/error.hpp"
#include "hflow/dataflow/analysis.hpp"

namespace hflow::sim {

using dataflow::Direction;
using dataflow::PipelineGraph;

const StageCounters* SimProfile::stage(const std::string& n) const {
  for (const auto& s : stages) {
    if (s.name == n) return &s;
  }
  return nullptr;
}

const StreamCounters* SimProfile::stream(const std::string& n) const {
  for (const auto& s : streams) {
    if (s.name == n) return &s;
  }
  return nullptr;
}

const PortCounters* SimProfile::port(const std::string& n) const {
  for (const auto& p : ports) {
    if (p.name == n) return &p;
  }
  return nullptr;
}

namespace {

constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

struct Fifo {
  std::int64_t depth = 1;
  std::int64_t wpi = 1;
  std::size_t producer = 0;
  std::size_t consumer = 0;
  std::int64_t occ = 0;
  std::uint64_t pushed = 0;
  std::uint64_t popped = 0;
  std::uint64_t full = 0;
  std::uint64_t empty = 0;
  std::uint64_t last_push = kNever;  // cycle of the latest push
  bool full_now = false;
  bool empty_now = false;
};

struct Buffer {
  std::int64_t bpi = 0;
  std::int64_t bpinv = 0;
  std::int64_t capacity = 0;
  std::int64_t to_fetch = 0;   // read: bytes not yet requested
  std::int64_t in_flight = 0;  // read: requested, not delivered
  std::int64_t resident = 0;   // bytes held in the kernel-side buffer
  std::int64_t unsent = 0;     // write: resident bytes not yet in a burst
};

struct Burst {
  std::size_t buffer = 0;
  std::int64_t bytes_left = 0;
  std::int64_t overhead_left = 0;
  std::uint64_t ready_at = 0;
};

struct Port {
  bool read = true;
  std::size_t stage = 0;
  std::int64_t width = 4;
  std::int64_t burst = 4;
  std::int64_t outstanding = 1;
  std::size_t channel = 0;
  std::vector<Buffer> bufs;
  std::deque<Burst> queue;
  std::vector<std::uint64_t> responses;  // write slots, free from these cycles
  std::size_t rr = 0;
  std::int64_t beat = 0;  // bytes of the beat on the bus this cycle
  double served = 0.0;    // channel bytes already granted to that beat
  std::uint64_t busy = 0;
  std::uint64_t bytes = 0;
};

// Each cycle the channel's bytes are shared max-min fairly among ports
// with a beat on the bus, each port taking at most its width. A beat lands
// once it has been granted all its bytes. Unused bandwidth is lost.
struct Channel {
  double rate = 0.0;  // bytes per kernel cycle
  std::vector<std::size_t> ports;
};

enum class Status { kIdle, kActive, kEmpty, kFull };

struct BufRef {
  std::size_t port;
  std::size_t buf;
};

struct Stage {
  std::int64_t items = 0;
  std::int64_t latency = 1;
  double spacing = 1.0;
  bool compute = false;
  std::uint64_t ptime = 0;
  double next_allowed = 0.0;
  std::int64_t started = 0;
  std::int64_t retired = 0;
  std::deque<std::uint64_t> inflight;  // exit ptime of each item
  std::vector<std::size_t> ins;
  std::vector<std::int64_t> gathered;
  std::vector<std::size_t> outs;
  std::vector<std::int64_t> pending;
  std::vector<BufRef> reads;
  std::vector<bool> taken;
  std::vector<BufRef> writes;

  Status status = Status::kIdle;
  bool frozen = false;
  bool mem = false;  // blocked on memory in the latest simulated cycle
  std::uint64_t active = 0;
  std::uint64_t empty = 0;
  std::uint64_t full = 0;
  std::uint64_t mem_cycles = 0;
  std::uint64_t exit_q1 = kNever;
  std::uint64_t exit_q3 = kNever;

  bool done() const {
    if (started < items || retired < items) return false;
    for (auto p : pending) {
      if (p > 0) return false;
    }
    return true;
  }
};

enum class Retire { kNone, kDone, kBlocked };

class Engine {
 public:
  Engine(const PipelineGraph& g, std::int64_t n, std::uint64_t seed) : g_(g) {
    const auto order = dataflow::topological_order(g);
    pos_.resize(g.stages.size());
    for (std::size_t k = 0; k < order.size(); ++k) pos_[order[k]] = k;
    const auto& pos = pos_;

    // Stages declaring a different item count than the compute stage keep
    // that ratio.
    const auto* cspec = g.find_stage(g.compute_stage);
    const std::int64_t base_items = cspec ? cspec->items : 0;
    auto scaled = [&](std::int64_t declared) {
      if (base_items <= 0 || declared == base_items) return n;
      return static_cast<std::int64_t>(static_cast<__int128>(n) * declared / base_items);
    };

    stages_.resize(g.stages.size());
    names_.resize(g.stages.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto& spec = g.stages[order[k]];
      Stage& s = stages_[k];
      names_[k] = spec.name;
      s.items = scaled(spec.items);
      s.latency = spec.pipeline_latency;
      s.compute = spec.name == g.compute_stage;
      s.spacing = static_cast<double>(spec.base_ii) * (s.compute ? g.steady_cycles_per_item : 1.0);
      if (s.compute) compute_ = k;
    }

    for (std::size_t i = 0; i < g.streams.size(); ++i) {
      const auto& spec = g.streams[i];
      Fifo f;
      f.depth = spec.depth;
      f.wpi = spec.words_per_item;
      f.producer = pos[*g.stage_index(spec.producer)];
      f.consumer = pos[*g.stage_index(spec.consumer)];
      stages_[f.producer].outs.push_back(i);
      stages_[f.producer].pending.push_back(0);
      stages_[f.consumer].ins.push_back(i);
      stages_[f.consumer].gathered.push_back(0);
      fifos_.push_back(f);
    }

    std::mt19937_64 rng(seed);
    const auto& mem = g.memory;
    channels_.resize(static_cast<std::size_t>(mem.channel_count));
    for (std::size_t i = 0; i < g.ports.size(); ++i) {
      const auto& spec = g.ports[i];
      Port p;
      p.read = spec.direction == Direction::kRead;
      p.stage = pos[*g.stage_index(spec.stage)];
      p.width = spec.width_bits / 8;
      p.burst = dataflow::burst_bytes(spec);
      p.outstanding = spec.outstanding;
      p.channel = static_cast<std::size_t>(spec.channel);
      for (std::size_t b = 0; b < spec.buffers.size(); ++b) {
        const auto& lb = spec.buffers[b];
        Buffer buf;
        buf.bpi = lb.bytes_per_item;
        buf.bpinv = lb.bytes_per_invocation;
        buf.capacity = (p.outstanding + 1) * p.burst + buf.bpi + buf.bpinv;
        if (p.read) {
          buf.to_fetch = buf.bpi * n + buf.bpinv;
          stages_[p.stage].reads.push_back({i, b});
          stages_[p.stage].taken.push_back(false);
        } else {
          stages_[p.stage].writes.push_back({i, b});
        }
        p.bufs.push_back(buf);
      }
      p.rr = static_cast<std::size_t>(rng() % p.bufs.size());
      channels_[p.channel].ports.push_back(i);
      ports_.push_back(std::move(p));
    }
    for (auto& ch : channels_) {
      ch.rate = mem.channel_bytes_per_second() / g.clock.freq_hz;
    }
    latency_ = static_cast<std::uint64_t>(mem.access_latency_cycles);
    overhead_ = mem.overhead_beats;
    n_ = n;
  }

  SimProfile run();

 private:
  bool step_ports(std::uint64_t t);
  bool step_stage(std::size_t k, std::uint64_t t);
  Retire try_retire(std::size_t k, std::uint64_t t, bool& pushed);
  bool inputs_complete(const Stage& s) const;
  bool finished(std::uint64_t t) const;
  std::uint64_t next_event(std::uint64_t t) const;
  void skip(std::uint64_t cycles);
  [[noreturn]] void deadlock(std::uint64_t t) const;
  SimProfile profile(std::uint64_t total) const;

  const PipelineGraph& g_;
  std::vector<Stage> stages_;
  std::vector<std::string> names_;
  std::vector<std::size_t> pos_;  // declaration index -> topological slot
  std::vector<Fifo> fifos_;
  std::vector<Port> ports_;
  std::vector<Channel> channels_;
  std::size_t compute_ = 0;
  std::uint64_t latency_ = 1;
  std::int64_t overhead_ = 0;
  std::int64_t n_ = 0;
};

bool Engine::step_ports(std::uint64_t t) {
  bool progress = false;
  for (auto& p : ports_) {
    p.beat = 0;
    if (!p.read) {
      std::erase_if(p.responses, [t](std::uint64_t f) { return f <= t; });
    }
    const auto in_use = static_cast<std::int64_t>(p.queue.size() + p.responses.size());
    if (in_use < p.outstanding) {
      const bool producer_done = stages_[p.stage].retired == stages_[p.stage].items;
      const std::size_t nb = p.bufs.size();
      for (std::size_t step = 0; step < nb; ++step) {
        const std::size_t b = (p.rr + step) % nb;
        Buffer& buf = p.bufs[b];
        std::int64_t bytes = 0;
        if (p.read) {
          bytes = std::min(p.burst, buf.to_fetch);
          if (bytes == 0 || buf.resident + buf.in_flight + bytes > buf.capacity) continue;
          buf.to_fetch -= bytes;
          buf.in_flight += bytes;
        } else {
          if (buf.unsent == 0 || (buf.unsent < p.burst && !producer_done && in_use > 0)) continue;
          bytes = std::min(p.burst, buf.unsent);
          buf.unsent -= bytes;
        }
        p.queue.push_back({b, bytes, overhead_, p.read ? t + latency_ : t});
        p.rr = (b + 1) % nb;
        progress = true;
        break;
      }
    }
    if (!p.queue.empty() && p.queue.front().ready_at <= t) {
      Burst& front = p.queue.front();
      progress = true;
      if (front.overhead_left > 0) {
        --front.overhead_left;
        ++p.busy;
      } else {
        p.beat = std::min(p.width, front.bytes_left);
      }
    }
  }

  std::vector<std::pair<double, std::size_t>> want;
  for (auto& ch : channels_) {
    want.clear();
    for (auto pi : ch.ports) {
      const Port& p = ports_[pi];
      if (p.beat > 0) want.emplace_back(std::min(static_cast<double>(p.width), p.beat - p.served), pi);
    }
    std::sort(want.begin(), want.end());
    double left = ch.rate;
    for (std::size_t k = 0; k < want.size(); ++k) {
      const double give = std::min(want[k].first, left / static_cast<double>(want.size() - k));
      left -= give;
      Port& p = ports_[want[k].second];
      ++p.busy;
      p.served += give;
      if (p.served + 1e-9 < static_cast<double>(p.beat)) continue;
      p.served = 0.0;
      Burst& front = p.queue.front();
      Buffer& buf = p.bufs[front.buffer];
      p.bytes += static_cast<std::uint64_t>(p.beat);
      front.bytes_left -= p.beat;
      if (p.read) {
        buf.in_flight -= p.beat;
        buf.resident += p.beat;
      } else {
        buf.resident -= p.beat;
      }
      if (front.bytes_left == 0) {
        p.queue.pop_front();
        if (!p.read) p.responses.push_back(t + latency_ + 1);
      }
    }
  }
  return progress;
}

bool Engine::inputs_complete(const Stage& s) const {
  for (std::size_t i = 0; i < s.ins.size(); ++i) {
    if (s.gathered[i] < fifos_[s.ins[i]].wpi) return false;
  }
  for (bool b : s.taken) {
    if (!b) return false;
  }
  return true;
}

Retire Engine::try_retire(std::size_t k, std::uint64_t t, bool& pushed) {
  Stage& s = stages_[k];
  if (s.inflight.empty() || s.inflight.front() > s.ptime) return Retire::kNone;
  for (auto p : s.pending) {
    if (p > 0) return Retire::kBlocked;
  }
  const bool last = s.retired + 1 == s.items;
  for (const auto& w : s.writes) {
    const Buffer& buf = ports_[w.port].bufs[w.buf];
    if (buf.resident + buf.bpi + (last ? buf.bpinv : 0) > buf.capacity) return Retire::kBlocked;
  }
  s.inflight.pop_front();
  ++s.retired;
  for (const auto& w : s.writes) {
    Buffer& buf = ports_[w.port].bufs[w.buf];
    const std::int64_t add = buf.bpi + (last ? buf.bpinv : 0);
    buf.resident += add;
    buf.unsent += add;
  }
  for (std::size_t o = 0; o < s.outs.size(); ++o) {
    Fifo& f = fifos_[s.outs[o]];
    s.pending[o] = f.wpi;
    if (f.last_push != t && f.occ < f.depth) {
      ++f.occ;
      ++f.pushed;
      f.last_push = t;
      --s.pending[o];
      pushed = true;
    }
  }
  if (s.compute) {
    const auto r = static_cast<std::uint64_t>(s.retired);
    const auto n = static_cast<std::uint64_t>(s.items);
    if (r == n / 4 + 1) s.exit_q1 = t;
    if (r == 3 * n / 4 + 1) s.exit_q3 = t;
  }
  return Retire::kDone;
}

bool Engine::step_stage(std::size_t k, std::uint64_t t) {
  Stage& s = stages_[k];
  bool drained = false;
  bool blocked_by_full = false;
  bool full_is_memory = false;
  for (std::size_t o = 0; o < s.outs.size(); ++o) {
    Fifo& f = fifos_[s.outs[o]];
    f.full_now = false;
    if (s.pending[o] == 0) continue;
    if (f.occ < f.depth) {
      ++f.occ;
      ++f.pushed;
      f.last_push = t;
      --s.pending[o];
      drained = true;
    }
  }

  bool retired = false;
  Retire r = try_retire(k, t, retired);
  retired = retired || r == Retire::kDone;
  s.frozen = r == Retire::kBlocked;

  bool popped = false;
  bool initiated = false;
  const std::uint64_t ptime = s.ptime;
  if (!s.frozen) {
    if (s.started < s.items) {
      for (std::size_t i = 0; i < s.ins.size(); ++i) {
        Fifo& f = fifos_[s.ins[i]];
        if (s.gathered[i] < f.wpi && f.occ > 0) {
          --f.occ;
          ++f.popped;
          ++s.gathered[i];
          popped = true;
        }
      }
      for (std::size_t i = 0; i < s.reads.size(); ++i) {
        if (s.taken[i]) continue;
        Buffer& buf = ports_[s.reads[i].port].bufs[s.reads[i].buf];
        const std::int64_t need = buf.bpi + (s.started == 0 ? buf.bpinv : 0);
        if (buf.resident >= need) {
          buf.resident -= need;
          s.taken[i] = true;
          popped = true;
        }
      }
      if (inputs_complete(s) && static_cast<double>(ptime) >= s.next_allowed) {
        ++s.started;
        s.inflight.push_back(ptime + static_cast<std::uint64_t>(s.latency) - 1);
        std::fill(s.gathered.begin(), s.gathered.end(), 0);
        std::fill(s.taken.begin(), s.taken.end(), false);
        const double base =
            static_cast<double>(ptime) < s.next_allowed + 1.0 ? s.next_allowed : static_cast<double>(ptime);
        s.next_allowed = base + s.spacing;
        initiated = true;
        if (s.latency == 1) {
          bool pushed = false;
          if (try_retire(k, t, pushed) == Retire::kDone) retired = true;
        }
      }
    }
    ++s.ptime;
  }
  const bool progress = drained || retired || popped || initiated;

  // Which full outputs hold the stage back, if any.
  bool pending_any = false;
  for (std::size_t o = 0; o < s.outs.size(); ++o) {
    if (s.pending[o] == 0) continue;
    pending_any = true;
    Fifo& f = fifos_[s.outs[o]];
    if (f.occ >= f.depth && f.last_push != t) {
      f.full_now = true;
      blocked_by_full = true;
      if (stages_[f.consumer].mem) full_is_memory = true;
    }
  }
  if (s.frozen) {
    const bool last = s.retired + 1 == s.items;
    for (const auto& w : s.writes) {
      const Buffer& buf = ports_[w.port].bufs[w.buf];
      if (buf.resident + buf.bpi + (last ? buf.bpinv : 0) > buf.capacity) {
        blocked_by_full = true;
        full_is_memory = true;
      }
    }
  }

  for (auto i : s.ins) fifos_[i].empty_now = false;
  bool mem = false;
  if ((s.frozen || !progress) && blocked_by_full) {
    s.status = Status::kFull;
    mem = full_is_memory;
  } else if (progress || s.frozen) {
    s.status = Status::kActive;
  } else if (s.started < s.items && static_cast<double>(ptime) >= s.next_allowed) {
    s.status = Status::kEmpty;
    for (std::size_t i = 0; i < s.ins.size(); ++i) {
      Fifo& f = fifos_[s.ins[i]];
      if (s.gathered[i] < f.wpi && f.occ == 0) {
        f.empty_now = true;
        if (stages_[f.producer].mem) mem = true;
      }
    }
    for (std::size_t i = 0; i < s.reads.size(); ++i) {
      if (!s.taken[i]) mem = true;
    }
  } else if (s.started < s.items || !s.inflight.empty() || pending_any) {
    s.status = Status::kActive;
  } else {
    s.status = Status::kIdle;
  }
  s.mem = mem;
  return progress;
}

bool Engine::finished(std::uint64_t t) const {
  for (const auto& s : stages_) {
    if (!s.done()) return false;
  }
  for (const auto& p : ports_) {
    if (p.read) continue;
    if (!p.queue.empty()) return false;
    for (const auto& b : p.bufs) {
      if (b.unsent > 0) return false;
    }
    for (auto f : p.responses) {
      if (f - 1 > t) return false;
    }
  }
  return true;
}

std::uint64_t Engine::next_event(std::uint64_t t) const {
  std::uint64_t e = kNever;
  auto at = [&e, t](std::uint64_t c) {
    if (c > t) e = std::min(e, c);
  };
  for (const auto& p : ports_) {
    if (!p.queue.empty()) at(p.queue.front().ready_at);
    for (auto f : p.responses) {
      at(f - 1);
      at(f);
    }
  }
  for (const auto& s : stages_) {
    if (s.frozen) continue;
    if (!s.inflight.empty()) {
      at(t + 1 + (s.inflight.front() > s.ptime ? s.inflight.front() - s.ptime : 0));
    }
    if (s.started < s.items && inputs_complete(s)) {
      const double wait = std::ceil(s.next_allowed) - static_cast<double>(s.ptime);
      at(t + 1 + (wait > 0 ? static_cast<std::uint64_t>(wait) : 0));
    }
  }
  return e;
}

void Engine::skip(std::uint64_t c) {
  for (auto& s : stages_) {
    switch (s.status) {
      case Status::kActive: s.active += c; break;
      case Status::kEmpty: s.empty += c; break;
      case Status::kFull: s.full += c; break;
      case Status::kIdle: break;
    }
    if (s.compute && s.mem) s.mem_cycles += c;
    if (!s.frozen) s.ptime += c;
  }
  for (auto& f : fifos_) {
    if (f.full_now) f.full += c;
    if (f.empty_now) f.empty += c;
  }
}

void Engine::deadlock(std::uint64_t t) const {
  std::vector<std::string> blocked;
  for (std::size_t k = 0; k < stages_.size(); ++k) {
    const Stage& s = stages_[k];
    if (s.done()) continue;
    blocked.push_back("stage " + names_[k]);
    for (std::size_t i = 0; i < s.ins.size(); ++i) {
      const Fifo& f = fifos_[s.ins[i]];
      if (s.gathered[i] < f.wpi && f.occ == 0) blocked.push_back("stream " + g_.streams[s.ins[i]].name + " (empty)");
    }
    for (std::size_t o = 0; o < s.outs.size(); ++o) {
      const Fifo& f = fifos_[s.outs[o]];
      if (s.pending[o] > 0 && f.occ >= f.depth) blocked.push_back("stream " + g_.streams[s.outs[o]].name + " (full)");
    }
    for (std::size_t i = 0; i < s.reads.size(); ++i) {
      if (!s.taken[i]) {
        const auto& ref = s.reads[i];
        blocked.push_back("port " + g_.ports[ref.port].name + "/" + g_.ports[ref.port].buffers[ref.buf].name);
      }
    }
  }
  throw DeadlockError(t, std::move(blocked));
}

SimProfile Engine::run() {
  for (std::uint64_t t = 0;;) {
    bool progress = step_ports(t);
    for (std::size_t k = 0; k < stages_.size(); ++k) {
      progress = step_stage(k, t) || progress;
      Stage& s = stages_[k];
      switch (s.status) {
        case Status::kActive: ++s.active; break;
        case Status::kEmpty: ++s.empty; break;
        case Status::kFull: ++s.full; break;
        case Status::kIdle: break;
      }
      if (s.compute && s.mem) ++s.mem_cycles;
    }
    for (auto& f : fifos_) {
      if (f.full_now) ++f.full;
      if (f.empty_now) ++f.empty;
    }
    if (finished(t)) return profile(t + 1);
    if (!progress) {
      const std::uint64_t e = next_event(t);
      if (e == kNever) deadlock(t);
      if (e > t + 1) {
        skip(e - t - 1);
        t = e;
        continue;
      }
    }
    ++t;
  }
}

SimProfile Engine::profile(std::uint64_t total) const {
  SimProfile p;
  p.graph = g_.name;
  p.freq_hz = g_.clock.freq_hz;
  p.iterations = 1;
  p.total_cycles = total;
  p.items = static_cast<std::uint64_t>(n_);
  for (std::size_t i = 0; i < g_.stages.size(); ++i) {
    const Stage& s = stages_[pos_[i]];
    p.stages.push_back({g_.stages[i].name, s.active, s.empty, s.full, static_cast<std::uint64_t>(s.retired)});
  }
  for (std::size_t i = 0; i < g_.streams.size(); ++i) {
    const Fifo& f = fifos_[i];
    StreamCounters c;
    c.name = g_.streams[i].name;
    c.words_pushed = f.pushed;
    c.words_popped = f.popped;
    c.resident_words = static_cast<std::uint64_t>(f.occ);
    c.full_stall_cycles = f.full;
    c.empty_stall_cycles = f.empty;
    p.streams.push_back(c);
  }
  for (std::size_t i = 0; i < g_.ports.size(); ++i) {
    PortCounters c;
    c.name = g_.ports[i].name;
    c.channel = g_.ports[i].channel;
    c.busy_cycles = ports_[i].busy;
    c.bytes_moved = ports_[i].bytes;
    p.ports.push_back(c);
  }
  const Stage& c = stages_[compute_];
  p.memory_stall_cycles = c.mem_cycles;
  if (c.exit_q1 != kNever && c.exit_q3 != kNever && c.exit_q3 > c.exit_q1) {
    const auto n = static_cast<std::uint64_t>(n_);
    const double items = static_cast<double>(3 * n / 4 - n / 4);
    p.steady_items_per_second = items / static_cast<double>(c.exit_q3 - c.exit_q1) * g_.clock.freq_hz;
  } else if (total > 0) {
    p.steady_items_per_second = static_cast<double>(n_) / static_cast<double>(total) * g_.clock.freq_hz;
  }
  return p;
}

// Derived rates, always recomputed from the integer counters so that every
// route to the same counters gives the same bits.
void finalize(SimProfile& p, const PipelineGraph& g) {
  const double total = static_cast<double>(p.total_cycles);
  const double seconds = total / p.freq_hz;
  for (auto& s : p.streams) {
    s.stall_rate = p.total_cycles == 0
                       ? 0.0
                       : std::min(1.0, static_cast<double>(s.full_stall_cycles + s.empty_stall_cycles) / total);
  }
  const double peak = g.memory.channel_bytes_per_second();
  for (auto& c : p.ports) {
    c.achieved_bandwidth = p.total_cycles == 0 ? 0.0 : static_cast<double>(c.bytes_moved) / seconds;
    c.utilization = std::min(1.0, c.achieved_bandwidth / peak);
  }
  p.memory_stall_fraction = p.total_cycles == 0 ? 0.0 : static_cast<double>(p.memory_stall_cycles) / total;
  p.achieved_mflops =
      p.total_cycles == 0 ? 0.0 : g.flops_per_item * static_cast<double>(p.items) / seconds / 1e6;
}

SimProfile zero_profile(const PipelineGraph& g) {
  SimProfile p;
  p.graph = g.name;
  p.freq_hz = g.clock.freq_hz;
  p.iterations = 1;
  for (const auto& s : g.stages) p.stages.push_back({s.name, 0, 0, 0, 0});
  for (const auto& s : g.streams) {
    StreamCounters c;
    c.name = s.name;
    p.streams.push_back(c);
  }
  for (const auto& s : g.ports) {
    PortCounters c;
    c.name = s.name;
    c.channel = s.channel;
    p.ports.push_back(c);
  }
  return p;
}

SimProfile run_once(const PipelineGraph& g, std::uint64_t n, std::uint64_t seed) {
  if (n == 0) return zero_profile(g);
  if (n > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max() / 1024)) {
    throw InvalidArgument("n_items too large");
  }
  Engine e(g, static_cast<std::int64_t>(n), seed);
  return e.run();
}

void accumulate(SimProfile& acc, const SimProfile& p, std::uint64_t times) {
  acc.total_cycles += p.total_cycles * times;
  acc.items += p.items * times;
  acc.memory_stall_cycles += p.memory_stall_cycles * times;
  for (std::size_t i = 0; i < acc.stages.size(); ++i) {
    auto& a = acc.stages[i];
    const auto& b = p.stages[i];
    a.active_cycles += b.active_cycles * times;
    a.stall_empty_cycles += b.stall_empty_cycles * times;
    a.stall_full_cycles += b.stall_full_cycles * times;
    a.items += b.items * times;
  }
  for (std::size_t i = 0; i < acc.streams.size(); ++i) {
    auto& a = acc.streams[i];
    const auto& b = p.streams[i];
    a.words_pushed += b.words_pushed * times;
    a.words_popped += b.words_popped * times;
    a.resident_words = b.resident_words;
    a.full_stall_cycles += b.full_stall_cycles * times;
    a.empty_stall_cycles += b.empty_stall_cycles * times;
  }
  for (std::size_t i = 0; i < acc.ports.size(); ++i) {
    acc.ports[i].busy_cycles += p.ports[i].busy_cycles * times;
    acc.ports[i].bytes_moved += p.ports[i].bytes_moved * times;
  }
}

}  // namespace

SimProfile simulate(const PipelineGraph& g, std::uint64_t n_items, std::uint64_t seed) {
  SimOptions o;
  o.seed = seed;
  return simulate_iterations(g, n_items, 1, o);
}

SimProfile simulate_iterations(const PipelineGraph& g, std::uint64_t items_per_iteration,
                               std::uint64_t iterations, const SimOptions& options) {
  dataflow::require_valid(g);
  SimProfile acc = zero_profile(g);
  acc.iterations = iterations;
  if (iterations == 0) {
    finalize(acc, g);
    return acc;
  }
  SimProfile first = run_once(g, items_per_iteration, options.seed);
  acc.steady_items_per_second = first.steady_items_per_second;
  if (options.replay_iterations) {
    accumulate(acc, first, iterations);
  } else {
    accumulate(acc, first, 1);
    for (std::uint64_t i = 1; i < iterations; ++i) {
      accumulate(acc, run_once(g, items_per_iteration, options.seed), 1);
    }
  }
  finalize(acc, g);
  return acc;
}

}  // namespace hflow::sim
