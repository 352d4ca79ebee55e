#pragma once

// Suite reports: one record per law check on one instance, a summary, and
// deterministic text and line-delimited JSON renderings.

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyverse/coherence.hpp"
#include "polyverse/error.hpp"
#include "polyverse/finset.hpp"

namespace polyverse {

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::size_t count = 20;
  std::size_t max_size = 3;
  std::size_t cap = default_enumeration_cap;
};

enum class Status { pass, fail, capped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::capped: return "capped";
  }
  return "?";
}

struct Record {
  std::size_t instance = 0;
  std::string descriptor;  // what the instance is
  std::string law;         // stable id of the law checked
  Status status = Status::pass;
  std::string detail;      // witness on success, counterexample on failure
};

struct Report {
  std::string suite;
  SuiteConfig config;
  std::size_t instances = 0;
  std::vector<Record> records;

  std::size_t count(Status s) const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.status == s ? 1 : 0;
    return n;
  }

  std::size_t capped_instances() const {
    std::size_t n = 0;
    std::size_t last = static_cast<std::size_t>(-1);
    for (const auto& r : records)
      if (r.status == Status::capped && r.instance != last) {
        ++n;
        last = r.instance;
      }
    return n;
  }

  /// 0 all pass, 1 any failure, 3 every instance hit the enumeration cap.
  int exit_code() const {
    if (count(Status::fail) > 0) return 1;
    if (instances > 0 && capped_instances() == instances) return 3;
    return 0;
  }
};

/// Collects the records of one instance.
class InstanceLog {
 public:
  InstanceLog(Report& report, std::size_t index) : report_(report), index_(index) {}

  void describe(std::string d) { descriptor_ = std::move(d); }

  void check(const std::string& law, bool holds, const std::string& detail = "") {
    report_.records.push_back({index_, descriptor_, law, holds ? Status::pass : Status::fail, detail});
  }

  void check(const LawCheck& c) { check(c.law, c.holds, c.detail); }

  void check(const std::string& law, const LawCheck& c) { check(law, c.holds, c.detail); }

  /// Runs a check that may throw; a thrown error fails the law.
  template <class Fn>
  void guarded(const std::string& law, Fn&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::cap_exceeded) throw;
      check(law, false, e.what());
    }
  }

  void capped(const std::string& what) {
    report_.records.push_back({index_, descriptor_, "instance", Status::capped, what});
  }

 private:
  Report& report_;
  std::size_t index_;
  std::string descriptor_;
};

/// Runs `body` once per instance under the configured cap. Instances that
/// exceed the cap are recorded as capped and the suite continues.
inline Report run_instances(const std::string& suite, const SuiteConfig& cfg, std::size_t instances,
                            const std::function<void(std::size_t, InstanceLog&)>& body) {
  Report report{suite, cfg, instances, {}};
  ScopedCap cap(cfg.cap);
  for (std::size_t i = 0; i < instances; ++i) {
    InstanceLog log(report, i);
    try {
      body(i, log);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::cap_exceeded) {
        log.capped(e.what());
      } else {
        log.check("instance", false, e.what());
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string render_text(const Report& r) {
  std::ostringstream out;
  out << "suite " << r.suite << " seed=" << r.config.seed << " count=" << r.config.count
      << " max-size=" << r.config.max_size << " cap=" << r.config.cap << "\n";
  for (const auto& rec : r.records) {
    out << (rec.status == Status::pass ? "PASS" : rec.status == Status::fail ? "FAIL" : "CAP ") << " #"
        << rec.instance << " " << rec.law;
    if (!rec.descriptor.empty()) out << " [" << rec.descriptor << "]";
    if (!rec.detail.empty()) out << ": " << rec.detail;
    out << "\n";
  }
  out << "summary " << r.suite << ": instances=" << r.instances << " records=" << r.records.size()
      << " passed=" << r.count(Status::pass) << " failed=" << r.count(Status::fail)
      << " capped=" << r.count(Status::capped) << " status=" << (r.exit_code() == 0 ? "ok" : "FAILED") << "\n";
  return out.str();
}

inline nlohmann::ordered_json summary_json(const Report& r) {
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  s["suite"] = r.suite;
  s["seed"] = r.config.seed;
  s["count"] = r.config.count;
  s["max_size"] = r.config.max_size;
  s["cap"] = r.config.cap;
  s["instances"] = r.instances;
  s["records"] = r.records.size();
  s["passed"] = r.count(Status::pass);
  s["failed"] = r.count(Status::fail);
  s["capped"] = r.count(Status::capped);
  s["exit"] = r.exit_code();
  return s;
}

inline std::string render_json(const Report& r) {
  std::ostringstream out;
  for (const auto& rec : r.records) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    j["suite"] = r.suite;
    j["instance"] = rec.instance;
    j["descriptor"] = rec.descriptor;
    j["law"] = rec.law;
    j["status"] = to_string(rec.status);
    j["detail"] = rec.detail;
    out << j.dump() << "\n";
  }
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  s["summary"] = summary_json(r);
  out << s.dump() << "\n";
  return out.str();
}

}  // namespace polyverse
