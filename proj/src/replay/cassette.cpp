#include "geneqa/replay/cassette.hpp"

#include <json.hpp>

#include "geneqa/errors.hpp"
#include "geneqa/util/strings.hpp"

namespace geneqa::replay {

using nlohmann::json;

Cassette Cassette::load(const std::string& path) {
    json doc;
    try {
        doc = json::parse(util::read_file(path));
    } catch (const json::exception& e) {
        throw LoadError("cassette " + path + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
        throw LoadError("cassette " + path + ": expected {\"entries\": [...]}");

    Cassette out;
    for (const auto& item : doc["entries"]) {
        CassetteEntry entry;
        entry.url = item.at("url").get<std::string>();
        entry.status = item.value("status", 200);
        entry.body = item.at("body").get<std::string>();
        entry.recorded_at = item.value("recorded_at", "");
        entry.note = item.value("note", "");
        out.add(std::move(entry));
    }
    return out;
}

void Cassette::save(const std::string& path) const {
    json entries = json::array();
    for (const auto& e : entries_) {
        json item = {{"url", e.url}, {"status", e.status}, {"body", e.body}};
        if (!e.recorded_at.empty()) item["recorded_at"] = e.recorded_at;
        if (!e.note.empty()) item["note"] = e.note;
        entries.push_back(std::move(item));
    }
    util::write_file(path, json{{"entries", std::move(entries)}}.dump(2) + "\n");
}

void Cassette::add(CassetteEntry entry) {
    by_url_[entry.url].push_back(entries_.size());
    entries_.push_back(std::move(entry));
}

const CassetteEntry& Cassette::lookup_next(const std::string& url) {
    auto it = by_url_.find(url);
    if (it == by_url_.end())
        throw ReplayMissError("replay miss: no recorded response for " + url);
    auto& positions = it->second;
    std::size_t& cursor = cursor_[url];
    std::size_t index = cursor < positions.size() ? cursor : positions.size() - 1;
    ++cursor;
    return entries_[positions[index]];
}

bool Cassette::contains(const std::string& url) const {
    return by_url_.count(url) > 0;
}

void Cassette::rewind() {
    cursor_.clear();
}

ncbi::RawResponse ReplayTransport::get(const std::string& url) {
    std::lock_guard lock(mutex_);
    const CassetteEntry& entry = cassette_.lookup_next(url);
    ++requests_;
    log_.push_back(url);
    return ncbi::RawResponse{url, entry.status, entry.body, 0};
}

RecordingTransport::RecordingTransport(std::shared_ptr<ncbi::Transport> inner,
                                       std::string cassette_path)
    : inner_(std::move(inner)), path_(std::move(cassette_path)) {}

ncbi::RawResponse RecordingTransport::get(const std::string& url) {
    ncbi::RawResponse resp = inner_->get(url);
    std::lock_guard lock(mutex_);
    cassette_.add(CassetteEntry{url, resp.status, resp.body,
                                std::to_string(resp.fetched_at_ms), "recorded"});
    cassette_.save(path_);
    return resp;
}

}  // namespace geneqa::replay
