/* Copyright 2026 The cfp Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "cfp/wayback.hpp"

#include <filesystem>
#include <regex>

#include "cfp/error.hpp"
#include "cfp/text.hpp"
#include "json.hpp"

namespace cfp::simulate {
namespace {

namespace fs = std::filesystem;

Date date_of_timestamp(const std::string& ts) {
  if (ts.size() < 8 || ts.find_first_not_of("0123456789") != std::string::npos) {
    fail(ErrorCode::kMalformedResponse, "archive timestamp '" + ts + "' is not YYYYMMDD...");
  }
  return Date(std::stoi(ts.substr(0, 4)), std::stoi(ts.substr(4, 2)), std::stoi(ts.substr(6, 2)));
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out.push_back(s[i]);
      continue;
    }
    const auto semi = s.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back('&');
      continue;
    }
    const std::string name(s.substr(i + 1, semi - i - 1));
    bool known = true;
    if (name == "amp") {
      out.push_back('&');
    } else if (name == "lt") {
      out.push_back('<');
    } else if (name == "gt") {
      out.push_back('>');
    } else if (name == "quot") {
      out.push_back('"');
    } else if (name == "apos" || name == "#39") {
      out.push_back('\'');
    } else if (name == "nbsp") {
      out.push_back(' ');
    } else if (name.size() > 1 && name[0] == '#') {
      char* end = nullptr;
      const bool hex = name[1] == 'x' || name[1] == 'X';
      const unsigned long cp = std::strtoul(name.c_str() + (hex ? 2 : 1), &end, hex ? 16 : 10);
      if (*end != '\0' || cp == 0 || cp > 0x10FFFF) {
        known = false;
      } else {
        text::append_utf8(out, static_cast<char32_t>(cp));
      }
    } else {
      known = false;
    }
    if (!known) {
      out.push_back('&');
      continue;
    }
    i = semi;
  }
  return out;
}

// Value of attribute `name` inside a single tag's text.
std::string attribute(std::string_view tag, std::string_view name) {
  const std::string lower = lower_ascii(tag);
  std::size_t pos = 0;
  while ((pos = lower.find(name, pos)) != std::string::npos) {
    const bool boundary = pos > 0 && (lower[pos - 1] == ' ' || lower[pos - 1] == '\t' ||
                                      lower[pos - 1] == '\n' || lower[pos - 1] == '\r');
    std::size_t p = pos + name.size();
    while (p < lower.size() && lower[p] == ' ') ++p;
    if (!boundary || p >= lower.size() || lower[p] != '=') {
      pos += name.size();
      continue;
    }
    ++p;
    while (p < lower.size() && lower[p] == ' ') ++p;
    if (p >= tag.size()) return {};
    const char quote = tag[p];
    if (quote == '"' || quote == '\'') {
      const auto end = tag.find(quote, p + 1);
      if (end == std::string_view::npos) return {};
      return std::string(tag.substr(p + 1, end - p - 1));
    }
    const auto end = tag.find_first_of(" \t\n\r>/", p);
    return std::string(tag.substr(p, end == std::string_view::npos ? std::string_view::npos : end - p));
  }
  return {};
}

std::string meta_content(const std::string& html, std::string_view attr, std::string_view value) {
  const std::string lower = lower_ascii(html);
  std::size_t pos = 0;
  while ((pos = lower.find("<meta", pos)) != std::string::npos) {
    const auto end = lower.find('>', pos);
    if (end == std::string::npos) break;
    const std::string_view tag(html.data() + pos, end - pos);
    if (lower_ascii(attribute(tag, attr)) == value) {
      std::string content = text::collapse_whitespace(decode_entities(attribute(tag, "content")));
      if (!content.empty()) return content;
    }
    pos = end;
  }
  return {};
}

std::string first_paragraph(const std::string& html) {
  const std::string lower = lower_ascii(html);
  std::size_t pos = 0;
  while ((pos = lower.find("<p", pos)) != std::string::npos) {
    const char after = pos + 2 < lower.size() ? lower[pos + 2] : '\0';
    if (after != '>' && after != ' ' && after != '\t' && after != '\n') {
      pos += 2;
      continue;
    }
    const auto open_end = lower.find('>', pos);
    if (open_end == std::string::npos) break;
    auto close = lower.find("</p>", open_end);
    if (close == std::string::npos) close = lower.size();
    std::string body = strip_html(std::string_view(html).substr(open_end + 1, close - open_end - 1));
    if (!body.empty()) return body;
    pos = close;
  }
  return {};
}

std::string raw_snapshot_url(const std::string& url, const std::string& timestamp) {
  const std::string marker = "/web/" + timestamp + "/";
  const auto at = url.find(marker);
  if (at == std::string::npos) return url;
  std::string out = url;
  out.insert(at + marker.size() - 1, "id_");
  return out;
}

}  // namespace

Date FrameworkSnapshot::snapshot_date() const { return date_of_timestamp(timestamp); }

std::string snapshot_to_json(const FrameworkSnapshot& s) {
  nlohmann::ordered_json j;
  j["as_of"] = s.as_of.iso();
  j["source_url"] = s.source_url;
  j["snapshot_url"] = s.snapshot_url;
  j["timestamp"] = s.timestamp;
  j["description"] = s.description;
  return j.dump();
}

FrameworkSnapshot snapshot_from_json(std::string_view text_value) {
  FrameworkSnapshot s;
  try {
    auto j = nlohmann::json::parse(text_value);
    s.as_of = Date::parse_or_throw(j.at("as_of").get<std::string>());
    s.source_url = j.at("source_url").get<std::string>();
    s.snapshot_url = j.at("snapshot_url").get<std::string>();
    s.timestamp = j.at("timestamp").get<std::string>();
    s.description = j.at("description").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed framework snapshot: ") + e.what());
  }
  if (s.description.empty()) fail(ErrorCode::kParse, "framework snapshot has an empty description");
  return s;
}

std::string strip_html(std::string_view html) {
  std::string out;
  out.reserve(html.size());
  bool in_tag = false;
  for (char c : html) {
    if (in_tag) {
      if (c == '>') {
        in_tag = false;
        out.push_back(' ');
      }
    } else if (c == '<') {
      in_tag = true;
    } else {
      out.push_back(c);
    }
  }
  return text::collapse_whitespace(decode_entities(out));
}

std::string extract_description(const std::string& html, const std::string& pattern) {
  if (!pattern.empty()) {
    try {
      std::regex re(pattern, std::regex::ECMAScript | std::regex::icase);
      std::smatch m;
      if (std::regex_search(html, m, re) && m.size() > 1) return strip_html(m[1].str());
    } catch (const std::regex_error& e) {
      fail(ErrorCode::kExtraction, "invalid extraction pattern '" + pattern + "': " + e.what());
    }
    return {};
  }
  std::string found = meta_content(html, "name", "description");
  if (found.empty()) found = meta_content(html, "property", "og:description");
  if (found.empty()) found = first_paragraph(html);
  return found;
}

WaybackClient::WaybackClient(WaybackConfig config, http::Client& client)
    : config_(std::move(config)), client_(client), cache_(config_.cache_dir, "wayback") {}

std::optional<WaybackClient::Closest> WaybackClient::query(const std::string& source_url,
                                                           const Date& probe) {
  const std::string url = config_.api_url + "?url=" + http::percent_encode(source_url) +
                          "&timestamp=" + probe.compact();
  ++requests_;
  http::Response r = http::with_retries(config_.retry, [&] { return client_.get(url); });
  if (r.status != 200) {
    fail(ErrorCode::kTransport, "archive availability API returned HTTP " + std::to_string(r.status));
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(r.body);
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::kMalformedResponse, "archive availability API returned non-JSON: " +
                                            r.body.substr(0, 200));
  }
  if (!j.is_object() || !j.contains("archived_snapshots") || !j["archived_snapshots"].is_object()) {
    return std::nullopt;
  }
  const auto& snaps = j["archived_snapshots"];
  if (!snaps.contains("closest") || !snaps["closest"].is_object()) return std::nullopt;
  const auto& c = snaps["closest"];
  if (c.contains("available") && c["available"].is_boolean() && !c["available"].get<bool>()) {
    return std::nullopt;
  }
  if (!c.contains("url") || !c["url"].is_string() || !c.contains("timestamp") ||
      !c["timestamp"].is_string()) {
    fail(ErrorCode::kMalformedResponse, "archive snapshot entry lacks url or timestamp");
  }
  Closest out;
  out.timestamp = c["timestamp"].get<std::string>();
  out.url = c["url"].get<std::string>();
  out.date = date_of_timestamp(out.timestamp);
  return out;
}

FrameworkSnapshot WaybackClient::fetch(const std::string& source_url, const Date& as_of) {
  const std::string key = text::sha256_hex(source_url + "\n" + as_of.compact());
  if (auto cached = cache_.load(key)) return snapshot_from_json(*cached);

  const auto first = query(source_url, as_of);
  if (!first) {
    fail(ErrorCode::kSnapshotNotFound, "no archived snapshot of " + source_url);
  }
  std::optional<Closest> chosen;
  if (first->date <= as_of) {
    chosen = first;
  } else {
    // The closest capture lies after as_of, so nothing exists in the gap of
    // the same width before it. Probe further back until a capture at or
    // before the probe turns up.
    std::int64_t probe = as_of.days_since_epoch() -
                         (first->date.days_since_epoch() - as_of.days_since_epoch());
    const std::int64_t limit = as_of.days_since_epoch() - config_.horizon_days;
    for (int step = 0; step < 64 && probe >= limit; ++step) {
      const Date probe_date = Date::from_days(probe);
      const auto r = query(source_url, probe_date);
      if (!r) break;
      if (r->date <= as_of) {
        chosen = r;
        break;
      }
      const std::int64_t gap = std::max<std::int64_t>(1, r->date.days_since_epoch() - probe);
      probe -= gap;
    }
    if (!chosen && first->date.days_since_epoch() - as_of.days_since_epoch() <=
                       config_.fallback_after_days) {
      chosen = first;
    }
  }
  if (!chosen) {
    fail(ErrorCode::kSnapshotNotFound,
         "no snapshot of " + source_url + " at or before " + as_of.iso() + " (nor within " +
             std::to_string(config_.fallback_after_days) + " days after)");
  }

  ++requests_;
  const std::string page_url = raw_snapshot_url(chosen->url, chosen->timestamp);
  http::Response page = http::with_retries(config_.retry, [&] { return client_.get(page_url); });
  if (page.status != 200) {
    fail(ErrorCode::kTransport, "snapshot " + page_url + " returned HTTP " + std::to_string(page.status));
  }
  FrameworkSnapshot snapshot;
  snapshot.as_of = as_of;
  snapshot.source_url = source_url;
  snapshot.snapshot_url = chosen->url;
  snapshot.timestamp = chosen->timestamp;
  snapshot.description = extract_description(page.body, config_.extract_pattern);
  if (snapshot.description.empty()) {
    std::string saved = "(not saved: no cache directory)";
    if (!config_.cache_dir.empty()) {
      const fs::path dir = fs::path(config_.cache_dir) / "wayback" / "failed";
      std::error_code ec;
      fs::create_directories(dir, ec);
      const fs::path file = dir / (chosen->timestamp + "-" + key.substr(0, 12) + ".html");
      text::write_file_atomic(file.string(), page.body);
      saved = file.string();
    }
    fail(ErrorCode::kExtraction,
         "could not extract a description from " + chosen->url + "; page saved to " + saved);
  }
  cache_.store(key, snapshot_to_json(snapshot));
  return snapshot;
}

}  // namespace cfp::simulate
