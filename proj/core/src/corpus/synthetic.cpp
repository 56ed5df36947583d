// Copyright 2026 The satriage Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "satriage/corpus/synthetic.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <iomanip>
#include <span>
#include <sstream>

#include "satriage/common/error.hpp"
#include "satriage/common/random.hpp"

namespace satriage::corpus {
namespace {

constexpr std::array<std::string_view, 12> kPtrNames{
    "buf", "data", "ptr", "item", "blk", "msg", "pkt", "elem", "obj", "res", "mem", "slot"};
constexpr std::array<std::string_view, 10> kIntNames{
    "n", "len", "count", "size", "idx", "total_len", "num", "limit", "width", "depth"};
constexpr std::array<std::string_view, 8> kLocalNames{
    "tmp_val", "acc", "hits", "retries", "offset", "pos", "level", "seq"};
constexpr std::array<std::string_view, 7> kStructNames{
    "node", "entry", "packet", "session", "record", "message", "device"};
constexpr std::array<std::string_view, 6> kFieldNames{
    "value", "flags", "id", "state", "length", "owner"};
constexpr std::array<std::string_view, 6> kLogCalls{
    "log_event", "update_stats", "notify", "trace_msg", "audit", "track"};
constexpr std::array<std::string_view, 3> kAllocCalls{"malloc", "xmalloc", "kmalloc"};

template <std::size_t N>
std::string pick(Rng &rng, const std::array<std::string_view, N> &pool) {
  return std::string(pool[rng.below(N)]);
}

int small_int(Rng &rng) { return 1 + static_cast<int>(rng.below(64)); }

/// Builds source text line by line and tracks the warning line.
class CodeWriter {
public:
  void line(int indent, const std::string &text) {
    lines_.push_back(std::string(static_cast<std::size_t>(indent) * 2, ' ') + text);
  }
  /// Emits a line and records it as the warning location.
  void warn(int indent, const std::string &text) {
    warning_line_ = static_cast<int>(lines_.size()) + 1;
    line(indent, text);
  }
  std::string text() const {
    std::string out;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      if (i > 0)
        out += '\n';
      out += lines_[i];
    }
    return out;
  }
  int warning_line() const { return warning_line_; }

private:
  std::vector<std::string> lines_;
  int warning_line_ = 1;
};

/// Local integer used by filler statements.
struct Filler {
  std::string var;
  std::string log_call;

  static Filler make(Rng &rng) { return {pick(rng, kLocalNames), pick(rng, kLogCalls)}; }

  void declare(CodeWriter &w, Rng &rng) const {
    w.line(1, "int " + var + " = " + std::to_string(small_int(rng)) + ";");
  }

  void emit(CodeWriter &w, Rng &rng, int indent, const std::string &other) const {
    switch (rng.below(3)) {
    case 0:
      w.line(indent, var + " = " + var + " + " + std::to_string(small_int(rng)) + ";");
      break;
    case 1:
      w.line(indent, log_call + "(" + other + ", " + std::to_string(small_int(rng)) + ");");
      break;
    default:
      w.line(indent, "if (" + var + " > " + std::to_string(small_int(rng)) + ") {");
      w.line(indent + 1, var + " = " + std::to_string(small_int(rng)) + ";");
      w.line(indent, "}");
      break;
    }
  }

  void maybe(CodeWriter &w, Rng &rng, int indent, const std::string &other) const {
    if (rng.below(2) == 0)
      emit(w, rng, indent, other);
  }
};

std::string null_guard(Rng &rng, const std::string &ptr) {
  switch (rng.below(3)) {
  case 0:
    return "if (" + ptr + " == NULL) {";
  case 1:
    return "if (!" + ptr + ") {";
  default:
    return "if (NULL == " + ptr + ") {";
  }
}

std::string failure_value(Rng &rng) { return rng.below(2) == 0 ? "-1" : "0"; }

using Family = std::function<void(CodeWriter &, Rng &, bool defective)>;

struct TemplateSet {
  std::string_view cwe;
  std::string_view checker;
  std::vector<std::pair<std::string_view, Family>> families;
};

// CWE-476: pointer from an allocator used without a NULL check.
TemplateSet null_deref_templates() {
  TemplateSet set{"CWE-476", "NULL_RETURNS", {}};
  set.families.emplace_back("alloc_buffer", [](CodeWriter &w, Rng &rng, bool bad) {
    const auto p = pick(rng, kPtrNames);
    const auto n = pick(rng, kIntNames);
    const auto f = Filler::make(rng);
    w.line(0, "int alloc_buffer(int " + n + ") {");
    f.declare(w, rng);
    w.line(1, "int *" + p + " = " + pick(rng, kAllocCalls) + "(" + n + " * sizeof(int));");
    if (!bad) {
      w.line(1, null_guard(rng, p));
      w.line(2, "return " + failure_value(rng) + ";");
      w.line(1, "}");
    }
    f.maybe(w, rng, 1, n);
    w.warn(1, p + "[0] = " + n + ";");
    w.line(1, p + "[1] = " + f.var + ";");
    f.maybe(w, rng, 1, p + "[0]");
    w.line(1, "free(" + p + ");");
    w.line(1, "return " + f.var + ";");
    w.line(0, "}");
  });
  set.families.emplace_back("make_node", [](CodeWriter &w, Rng &rng, bool bad) {
    const auto s = pick(rng, kStructNames);
    const auto field = pick(rng, kFieldNames);
    const auto f = Filler::make(rng);
    w.line(0, "struct " + s + " *make_node(int key) {");
    f.declare(w, rng);
    w.line(1, "struct " + s + " *fresh = " + pick(rng, kAllocCalls) + "(sizeof(struct " + s +
                  "));");
    if (!bad) {
      w.line(1, null_guard(rng, "fresh"));
      w.line(2, "return NULL;");
      w.line(1, "}");
    }
    f.maybe(w, rng, 1, "key");
    w.warn(1, "fresh->" + field + " = key;");
    w.line(1, "fresh->next = NULL;");
    f.maybe(w, rng, 1, "key");
    w.line(1, "return fresh;");
    w.line(0, "}");
  });
  set.families.emplace_back("copy_name", [](CodeWriter &w, Rng &rng, bool bad) {
    const auto n = pick(rng, kIntNames);
    const auto f = Filler::make(rng);
    w.line(0, "char *copy_name(char *src, int " + n + ") {");
    f.declare(w, rng);
    w.line(1, "char *dst = " + pick(rng, kAllocCalls) + "(" + n + " + " +
                  std::to_string(1 + rng.below(4)) + ");");
    if (!bad) {
      w.line(1, null_guard(rng, "dst"));
      w.line(2, "return NULL;");
      w.line(1, "}");
    }
    f.maybe(w, rng, 1, n);
    w.line(1, "for (int i = 0; i < " + n + "; i++) {");
    w.warn(2, "dst[i] = src[i];");
    w.line(1, "}");
    w.line(1, "dst[" + n + "] = '\\0';");
    w.line(1, "return dst;");
    w.line(0, "}");
  });
  return set;
}

// CWE-457: a local read on a path where it was never written.
TemplateSet uninit_templates() {
  TemplateSet set{"CWE-457", "UNINIT", {}};
  set.families.emplace_back("sum_values", [](CodeWriter &w, Rng &rng, bool bad) {
    const auto n = pick(rng, kIntNames);
    const auto f = Filler::make(rng);
    w.line(0, "int sum_values(int *vals, int " + n + ") {");
    f.declare(w, rng);
    w.line(1, bad ? "int total;" : "int total = 0;");
    f.maybe(w, rng, 1, n);
    w.line(1, "for (int i = 0; i < " + n + "; i++) {");
    w.warn(2, "total += vals[i];");
    w.line(1, "}");
    f.maybe(w, rng, 1, "total");
    w.line(1, "return total;");
    w.line(0, "}");
  });
  set.families.emplace_back("select_mode", [](CodeWriter &w, Rng &rng, bool bad) {
    const auto f = Filler::make(rng);
    w.line(0, "int select_mode(int flag) {");
    f.declare(w, rng);
    w.line(1, "int mode;");
    w.line(1, "if (flag > " + std::to_string(small_int(rng)) + ") {");
    w.line(2, "mode = " + std::to_string(small_int(rng)) + ";");
    if (bad) {
      w.line(1, "}");
    } else {
      w.line(1, "} else {");
      w.line(2, "mode = 0;");
      w.line(1, "}");
    }
    f.maybe(w, rng, 1, "flag");
    w.warn(1, "return mode + " + f.var + ";");
    w.line(0, "}");
  });
  set.families.emplace_back("read_status", [](CodeWriter &w, Rng &rng, bool bad) {
    const auto s = pick(rng, kStructNames);
    const auto f = Filler::make(rng);
    w.line(0, "int read_status(struct " + s + " *dev) {");
    f.declare(w, rng);
    w.line(1, bad ? "int status;" : "int status = -1;");
    w.line(1, "if (dev->flags & " + std::to_string(1 << rng.below(6)) + ") {");
    w.line(2, "status = check_" + s + "(dev);");
    w.line(1, "}");
    f.maybe(w, rng, 1, "status");
    w.warn(1, "return status;");
    w.line(0, "}");
  });
  return set;
}

// CWE-401: heap memory not released on an exit path.
TemplateSet leak_templates() {
  TemplateSet set{"CWE-401", "RESOURCE_LEAK", {}};
  set.families.emplace_back("process_request", [](CodeWriter &w, Rng &rng, bool bad) {
    const auto p = pick(rng, kPtrNames);
    const auto n = pick(rng, kIntNames);
    const auto f = Filler::make(rng);
    w.line(0, "int process_request(char *input, int " + n + ") {");
    f.declare(w, rng);
    w.line(1, "char *" + p + " = " + pick(rng, kAllocCalls) + "(" + n + ");");
    w.line(1, null_guard(rng, p));
    w.line(2, "return -1;");
    w.line(1, "}");
    w.line(1, "memcpy(" + p + ", input, " + n + ");");
    f.maybe(w, rng, 1, n);
    w.line(1, "if (validate(" + p + ", " + n + ") < 0) {");
    if (!bad)
      w.line(2, "free(" + p + ");");
    w.warn(2, "return -1;");
    w.line(1, "}");
    w.line(1, "free(" + p + ");");
    w.line(1, "return " + f.var + ";");
    w.line(0, "}");
  });
  set.families.emplace_back("build_table", [](CodeWriter &w, Rng &rng, bool bad) {
    const auto p = pick(rng, kPtrNames);
    const auto n = pick(rng, kIntNames);
    const auto f = Filler::make(rng);
    w.line(0, "int build_table(int " + n + ") {");
    f.declare(w, rng);
    w.line(1, "int *" + p + " = calloc(" + n + ", sizeof(int));");
    w.line(1, null_guard(rng, p));
    w.line(2, "return -1;");
    w.line(1, "}");
    w.line(1, p + "[0] = " + n + ";");
    f.maybe(w, rng, 1, n);
    w.line(1, "int result = " + p + "[0] + " + std::to_string(small_int(rng)) + ";");
    if (!bad)
      w.line(1, "free(" + p + ");");
    w.warn(1, "return result;");
    w.line(0, "}");
  });
  return set;
}

// CWE-404: a handle not closed before an early return.
TemplateSet release_templates() {
  TemplateSet set{"CWE-404", "RESOURCE_LEAK", {}};
  set.families.emplace_back("read_config", [](CodeWriter &w, Rng &rng, bool bad) {
    const auto f = Filler::make(rng);
    w.line(0, "int read_config(char *path) {");
    f.declare(w, rng);
    w.line(1, "FILE *fp = fopen(path, \"" + std::string(rng.below(2) ? "r" : "rb") + "\");");
    w.line(1, null_guard(rng, "fp"));
    w.line(2, "return -1;");
    w.line(1, "}");
    w.line(1, "int value = parse_header(fp);");
    f.maybe(w, rng, 1, "value");
    w.line(1, "if (value < " + std::to_string(rng.below(3)) + ") {");
    if (!bad)
      w.line(2, "fclose(fp);");
    w.warn(2, "return -1;");
    w.line(1, "}");
    w.line(1, "fclose(fp);");
    w.line(1, "return value;");
    w.line(0, "}");
  });
  set.families.emplace_back("open_session", [](CodeWriter &w, Rng &rng, bool bad) {
    const auto f = Filler::make(rng);
    w.line(0, "int open_session(int port) {");
    f.declare(w, rng);
    w.line(1, "int fd = open_socket(port, " + std::to_string(small_int(rng)) + ");");
    w.line(1, "if (fd < 0) {");
    w.line(2, "return -1;");
    w.line(1, "}");
    f.maybe(w, rng, 1, "fd");
    w.line(1, "int rc = handshake(fd);");
    w.line(1, "if (rc != 0) {");
    if (!bad)
      w.line(2, "close_socket(fd);");
    w.warn(2, "return rc;");
    w.line(1, "}");
    w.line(1, "close_socket(fd);");
    w.line(1, "return 0;");
    w.line(0, "}");
  });
  return set;
}

const std::vector<TemplateSet> &all_templates() {
  static const std::vector<TemplateSet> sets = [] {
    std::vector<TemplateSet> out;
    out.push_back(null_deref_templates());
    out.push_back(uninit_templates());
    out.push_back(leak_templates());
    out.push_back(release_templates());
    return out;
  }();
  return sets;
}

const TemplateSet &find_template(const std::string &cwe) {
  for (const auto &set : all_templates())
    if (set.cwe == cwe)
      return set;
  throw Error("unknown template " + cwe);
}

std::size_t count_field(const Json &value, const std::string &cwe, const std::string &key) {
  if (!value.is_number_integer() || value.get<long long>() < 0)
    throw SchemaError(cwe + ": count for " + key + " must be a non-negative integer");
  return value.get<std::size_t>();
}

} // namespace

std::vector<std::string> supported_templates() {
  std::vector<std::string> out;
  for (const auto &set : all_templates())
    out.emplace_back(set.cwe);
  return out;
}

SyntheticSpec parse_synthetic_spec(const Json &spec) {
  if (!spec.is_object())
    throw SchemaError("synthetic spec must be a JSON object keyed by CWE");
  SyntheticSpec out;
  for (const auto &[cwe, value] : spec.items()) {
    TemplateCounts counts;
    if (value.is_number_integer()) {
      counts.reported_fixed = count_field(value, cwe, "pos");
      counts.dismissed = counts.reported_fixed;
    } else if (value.is_object()) {
      for (const auto &[key, count] : value.items()) {
        const std::size_t n = count_field(count, cwe, key);
        if (key == "pos" || key == "reported_fixed")
          counts.reported_fixed += n;
        else if (key == "neg" || key == "dismissed")
          counts.dismissed += n;
        else if (key == "synthetic_fixed" || key == "fixed")
          counts.synthetic_fixed += n;
        else if (key == "open")
          counts.open += n;
        else
          throw SchemaError(cwe + ": unknown count key " + key);
      }
    } else {
      throw SchemaError(cwe + ": expected an integer or an object of counts");
    }
    out.cwes[cwe] = counts;
  }
  return out;
}

std::vector<WarningRecord> generate_synthetic_records(const SyntheticSpec &spec,
                                                      std::uint64_t seed) {
  for (const auto &[cwe, counts] : spec.cwes)
    find_template(cwe);

  Rng rng(seed);
  std::vector<WarningRecord> out;
  for (const auto &[cwe, counts] : spec.cwes) {
    const TemplateSet &set = find_template(cwe);
    std::vector<Origin> plan;
    plan.insert(plan.end(), counts.reported_fixed, Origin::reported_fixed);
    plan.insert(plan.end(), counts.dismissed, Origin::dismissed);
    plan.insert(plan.end(), counts.synthetic_fixed, Origin::synthetic_fixed);
    plan.insert(plan.end(), counts.open, Origin::open);
    rng.shuffle(plan);

    std::size_t sequence = 0;
    for (Origin origin : plan) {
      const auto &[family_name, family] = set.families[rng.below(set.families.size())];
      const bool defective = origin == Origin::reported_fixed ||
                             (origin == Origin::open && rng.below(2) == 0);
      CodeWriter writer;
      family(writer, rng, defective);

      WarningRecord record;
      std::ostringstream id;
      id << cwe << '-' << std::setw(6) << std::setfill('0') << ++sequence;
      record.id = id.str();
      record.cwe = cwe;
      record.source = writer.text();
      record.file_path = "src/" + std::string(family_name) + "_" +
                         std::to_string(rng.below(100)) + ".c";
      record.line = writer.warning_line();
      record.checker = std::string(set.checker);
      record.origin = origin;
      record.label = label_for(origin);
      out.push_back(std::move(record));
    }
  }
  return out;
}

std::string generate_synthetic_corpus(const SyntheticSpec &spec, std::uint64_t seed) {
  std::string out;
  for (const auto &record : generate_synthetic_records(spec, seed)) {
    out += canonical_dump(to_json(record));
    out += '\n';
  }
  return out;
}

void write_synthetic_corpus(const SyntheticSpec &spec, std::uint64_t seed,
                            const std::filesystem::path &out) {
  write_text_file_atomic(out, generate_synthetic_corpus(spec, seed));
}

} // namespace satriage::corpus
