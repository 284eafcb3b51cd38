#pragma once

#include <functional>
#include <string>

namespace geneqa::agent {

// Text-completion contract used by the decode loop. next_chunk returns the
// continuation of `prefix` (one token or a bounded chunk) at temperature 0.
// Scripted implementations must be deterministic for a fixed prefix.
class CompletionBackend {
public:
    virtual ~CompletionBackend() = default;
    virtual std::string next_chunk(const std::string& prefix) = 0;
    virtual std::string id() const = 0;
};

// Adapter for tests and ad-hoc backends.
class FunctionBackend : public CompletionBackend {
public:
    using Fn = std::function<std::string(const std::string&)>;
    FunctionBackend(std::string id, Fn fn) : id_(std::move(id)), fn_(std::move(fn)) {}

    std::string next_chunk(const std::string& prefix) override { return fn_(prefix); }
    std::string id() const override { return id_; }

private:
    std::string id_;
    Fn fn_;
};

}  // namespace geneqa::agent
