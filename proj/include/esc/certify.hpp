#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "esc/greedy.hpp"
#include "esc/identities.hpp"
#include "esc/sieve.hpp"

namespace esc {

enum class Method {
    EvenReduce,
    TwoTerm3Mod4,
    CompositeFactor,
    SieveClass,
    Greedy,
    WitnessSearch,
};
inline constexpr unsigned kMethodCount = 6;

const char* method_name(Method m);
std::optional<Method> method_from_name(const std::string& s);

// Self-contained proof record for one n. Re-verification uses only the
// recorded numbers, never the producing method.
struct Certificate {
    WideInt n;
    Method method;
    WideInt x, y;
    std::optional<WideInt> z;
    std::optional<ParamWitness> witness;
    DecompKind kind = DecompKind::General;
};

// One JSON object per line; fields n, method, x, y, z (omitted when absent),
// witness (optional); integers as decimal strings.
std::string certificate_to_json_line(const Certificate& c);
Certificate certificate_from_json_line(const std::string& line);

class NotFoundError : public std::runtime_error {
  public:
    explicit NotFoundError(const WideInt& n_)
        : std::runtime_error("no decomposition found for n = " + n_.get_str()), n(n_) {}
    WideInt n;
};

struct VerifyOptions {
    unsigned class_param_bound = 64;  // parameter range of the shared class table
    unsigned long greedy_cap = 64;    // greedy steps before the divisor fallback
    // Divisor-scan fallback bound: search while den·(3β+2) < num·q.
    unsigned fallback_bound_num = 3;
    unsigned fallback_bound_den = 2;
    std::uint64_t chunk = 1 << 16;  // numbers per shard work unit

    std::string hash() const;
};

// Shares one immutable class table across any number of threads.
class Certifier {
  public:
    explicit Certifier(VerifyOptions opts = {});

    // First applicable method: even n -> explicit triple; n ≡ 3 (mod 4) ->
    // two-term formula; odd composite -> lift the smallest prime factor's
    // certificate; prime n ≡ 1 (mod 4) -> class table, then bounded greedy,
    // then the divisor-scan fallback. Exhaustion throws NotFoundError.
    Certificate decompose(const WideInt& n) const;

    const VerifyOptions& options() const { return opts_; }
    const std::vector<CoverClass>& classes() const { return classes_; }

  private:
    Certificate decompose_prime_1mod4(const WideInt& n) const;

    VerifyOptions opts_;
    std::vector<CoverClass> classes_;
};

// Decompose with default options (shared static table).
Certificate decompose(const WideInt& n);

struct Checkpoint {
    WideInt verified_through;
    std::vector<WideInt> open_items;  // sorted NOT-FOUND values
    std::string config_hash;
};

Checkpoint read_checkpoint(const std::string& path);
void write_checkpoint(const std::string& path, const Checkpoint& cp);  // tmp+rename

struct VerifyReport {
    WideInt from, to;
    std::uint64_t certified = 0;
    std::array<std::uint64_t, kMethodCount> method_counts{};
    std::vector<WideInt> not_found;
    WideInt verified_through;
    bool resumed = false;
};

// Certifies every n in [from, to], writing one JSON line per certificate to
// out_path ("" = stdout). Work is split into chunks processed by `shards`
// worker threads; a single writer emits chunks in order, so the output is
// identical whatever the shard count. With a checkpoint path the run is
// resumable; a checkpoint whose config hash differs is refused.
VerifyReport verify_range(const WideInt& from, const WideInt& to, unsigned shards,
                          const std::string& checkpoint_path, const std::string& out_path,
                          const VerifyOptions& opts = {});

struct RecheckReport {
    std::uint64_t lines = 0;
    std::uint64_t passed = 0;
    std::vector<std::uint64_t> failed_lines;
};

// Re-verifies every recorded triple by the defining equation alone.
// Malformed lines throw std::runtime_error naming the line number.
RecheckReport recheck(const std::string& certificate_path);

}  // namespace esc
