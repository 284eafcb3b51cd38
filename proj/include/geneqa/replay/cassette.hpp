#pragma once

#include <atomic>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "geneqa/ncbi/transport.hpp"

namespace geneqa::replay {

// One recorded exchange. Keys preserve the exact URL byte sequence the
// builders produced; no parameter reordering happens on lookup.
struct CassetteEntry {
    std::string url;
    int status = 200;
    std::string body;
    std::string recorded_at;  // informational
    std::string note;         // informational provenance label
};

// Ordered store of recorded responses. Repeated requests for the same URL
// play back in recording order and stick at the last entry, which lets a
// cassette hold e.g. a pending BLAST status followed by the final result.
class Cassette {
public:
    Cassette() = default;

    static Cassette load(const std::string& path);
    void save(const std::string& path) const;

    void add(CassetteEntry entry);

    // Replay lookup; throws ReplayMissError when the URL was never recorded.
    const CassetteEntry& lookup_next(const std::string& url);

    bool contains(const std::string& url) const;
    std::size_t size() const { return entries_.size(); }
    const std::vector<CassetteEntry>& entries() const { return entries_; }

    // Forgets playback positions (each session replays from the top).
    void rewind();

private:
    std::vector<CassetteEntry> entries_;
    std::map<std::string, std::vector<std::size_t>> by_url_;
    std::map<std::string, std::size_t> cursor_;
};

// Transport serving responses from a cassette only; performs zero network
// I/O by construction. Lookup order is tracked per URL (thread-safe).
class ReplayTransport : public ncbi::Transport {
public:
    explicit ReplayTransport(Cassette cassette) : cassette_(std::move(cassette)) {}

    ncbi::RawResponse get(const std::string& url) override;
    std::string kind() const override { return "replay"; }

    std::size_t request_count() const { return requests_; }
    const std::vector<std::string>& request_log() const { return log_; }

private:
    Cassette cassette_;
    std::mutex mutex_;
    std::atomic<std::size_t> requests_{0};
    std::vector<std::string> log_;
};

// Pass-through transport that appends every exchange to a cassette file.
class RecordingTransport : public ncbi::Transport {
public:
    RecordingTransport(std::shared_ptr<ncbi::Transport> inner, std::string cassette_path);

    ncbi::RawResponse get(const std::string& url) override;
    std::string kind() const override { return "record"; }

    const Cassette& cassette() const { return cassette_; }

private:
    std::shared_ptr<ncbi::Transport> inner_;
    std::string path_;
    std::mutex mutex_;
    Cassette cassette_;
};

}  // namespace geneqa::replay
