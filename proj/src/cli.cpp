#include "knightmagic/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "knightmagic/board.hpp"
#include "knightmagic/classify.hpp"
#include "knightmagic/emperor.hpp"
#include "knightmagic/filter.hpp"
#include "knightmagic/fixtures.hpp"
#include "knightmagic/search.hpp"
#include "knightmagic/tour.hpp"

namespace knightmagic {

using json = nlohmann::ordered_json;

namespace {

// bad input that should end as a usage error
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_fixture(const std::string& text) {
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.starts_with("kind ") || line.starts_with("class ")) return true;
    if (!line.empty() && std::isdigit(static_cast<unsigned char>(line[0]))) break;
  }
  return false;
}

// a tour file or a fixture file
Fixture read_tour_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    if (looks_like_fixture(text)) return parse_fixture(text, std::filesystem::path(path).stem());
    Fixture f;
    f.id = std::filesystem::path(path).stem();
    f.tour = parse_tour(text);
    return f;
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

json sums_json(const std::vector<std::int64_t>& v) { return json(v); }

json grid_json(const Tour& t) {
  json rows = json::array();
  for (int r = 0; r < t.dims.height(); ++r) {
    json row = json::array();
    for (int c = 0; c < t.dims.width(); ++c) row.push_back(t.at({c, r}));
    rows.push_back(row);
  }
  return rows;
}

json stats_json(const SearchSpec& spec, std::uint64_t count, const SearchStats& s) {
  json j;
  j["board"] = spec.dims.str();
  j["closure"] = to_string(spec.closure);
  j["filter"] = spec.filter.str();
  j["mode"] = to_string(spec.mode);
  j["count"] = count;
  j["nodes"] = s.nodes;
  j["pruned"] = s.pruned();
  j["elapsed_ms"] = std::round(s.elapsed_ms * 1000) / 1000;
  j["workers"] = s.workers;
  return j;
}

struct SearchOptions {
  std::string board;
  std::string closure = "any";
  std::string mode = "arithmetic";
  std::string cls;
  std::string filter;
  int threads = 0;
  int seed_depth = -1;
  std::uint64_t max_nodes = 0;
  double time_limit = 0;
  bool no_pruning = false;
};

void add_search_options(CLI::App* cmd, SearchOptions& o) {
  cmd->add_option("--board", o.board, "board size WxH")->required();
  cmd->add_option("--closure", o.closure, "open, closed or any")
      ->check(CLI::IsMember({"open", "closed", "any"}));
  cmd->add_option("--mode", o.mode, "raw, arithmetic or geometric")
      ->check(CLI::IsMember({"raw", "arithmetic", "geometric"}));
  cmd->add_option("--class", o.cls, "class token, e.g. semi_long");
  cmd->add_option("--filter", o.filter, "predicate, e.g. distinct(long)=2&mc_lines(short)>=13");
  cmd->add_option("--threads", o.threads, "worker threads, 0 = available parallelism")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed-depth", o.seed_depth, "frontier split depth for work units");
  cmd->add_option("--max-nodes", o.max_nodes, "abort after this many search nodes");
  cmd->add_option("--time-limit", o.time_limit, "abort after this many seconds");
  cmd->add_flag("--no-pruning", o.no_pruning, "check the filter at leaves only");
}

Filter build_filter(const std::string& cls, const std::string& expr) {
  Filter f;
  if (!cls.empty()) f = f & Filter::of_class(cls);
  if (!expr.empty()) {
    try {
      f = f & Filter::parse(expr);
    } catch (const ParseError& e) {
      throw UsageError("--filter: column " + std::to_string(e.column()) + ": " + e.message());
    }
  }
  return f;
}

SearchSpec build_spec(const SearchOptions& o) {
  SearchSpec spec;
  spec.dims = BoardDims::parse(o.board);
  spec.closure = parse_closure(o.closure);
  spec.mode = parse_mode(o.mode);
  spec.filter = build_filter(o.cls, o.filter);
  spec.threads = o.threads;
  spec.seed_depth = o.seed_depth;
  spec.max_nodes = o.max_nodes;
  spec.time_limit_s = o.time_limit;
  spec.line_pruning = !o.no_pruning;
  return spec;
}

void print(std::ostream& out, const json& j) { out << j.dump() << "\n"; }

int aborted(std::ostream& out, std::ostream& err, const SearchSpec& spec, const SearchAborted& e) {
  json j = stats_json(spec, 0, e.stats());
  j.erase("count");
  j["aborted"] = true;
  j["reason"] = e.what();
  j["partial_raw"] = e.partial_raw();
  print(out, j);
  err << e.what() << "\n";
  return kExitAborted;
}

int cmd_count(const SearchOptions& o, std::ostream& out, std::ostream& err) {
  const SearchSpec spec = build_spec(o);
  try {
    const SearchResult r = count_tours(spec);
    json j = stats_json(spec, r.count, r.stats);
    j["open"] = r.open;
    j["closed"] = r.closed;
    j["raw"] = r.raw;
    if (r.diagrams) j["diagrams"] = *r.diagrams;
    print(out, j);
    return kExitOk;
  } catch (const SearchAborted& e) {
    return aborted(out, err, spec, e);
  }
}

int cmd_search(const SearchOptions& o, std::optional<std::uint64_t> limit, const std::string& dir,
               std::ostream& out, std::ostream& err) {
  SearchSpec spec = build_spec(o);
  spec.limit = limit;
  if (!dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create " + dir + ": " + ec.message());
  }
  std::uint64_t index = 0;
  try {
    const SearchResult r = enumerate_tours(spec, [&](const Tour& t) {
      ++index;
      const auto rep = classify(t);
      json j;
      j["index"] = index;
      j["board"] = t.dims.str();
      j["class"] = to_token(rep.cls);
      j["closed"] = is_closed(t);
      j["grid"] = grid_json(t);
      if (!dir.empty()) {
        Fixture f;
        f.tour = t;
        f.expected_class = to_token(rep.cls);
        f.source = "search " + spec.dims.str() + " " + spec.filter.str() + " #" + std::to_string(index);
        f.expected_short_sums = rep.profile.short_sums;
        f.expected_long_sums = rep.profile.long_sums;
        char name[64];
        std::snprintf(name, sizeof name, "%s-%06llu.tour", spec.dims.str().c_str(),
                      static_cast<unsigned long long>(index));
        const auto path = std::filesystem::path(dir) / name;
        std::ofstream(path, std::ios::binary) << format_fixture(f);
        j["file"] = path.string();
      }
      print(out, j);
    });
    json j = stats_json(spec, r.count, r.stats);
    j["truncated"] = r.truncated;
    print(out, j);
    return kExitOk;
  } catch (const SearchAborted& e) {
    return aborted(out, err, spec, e);
  }
}

json report_json(const ClassificationReport& r) {
  json j;
  j["class"] = to_token(r.cls);
  j["short_sums"] = sums_json(r.profile.short_sums);
  j["long_sums"] = sums_json(r.profile.long_sums);
  j["short_mc"] = r.constants.short_is_integral ? json(r.constants.short_mc) : json(nullptr);
  j["long_mc"] = r.constants.long_is_integral ? json(r.constants.long_mc) : json(nullptr);
  j["off_direction_distinct_values"] = sums_json(r.off_direction_distinct_values);
  j["contains_mc"] = r.contains_mc;
  return j;
}

int cmd_classify(const std::string& in, const std::string& expect, std::ostream& out) {
  const Fixture f = read_tour_file(in);
  json j;
  j["board"] = f.tour.dims.str();
  j["kind"] = f.kind == FixtureKind::Emperor ? "emperor" : "knight";
  bool ok = true;
  if (f.kind == FixtureKind::Emperor) {
    const auto chk = validate_emperor(f.tour);
    j["valid"] = chk.ok;
    if (chk.ok) j["junction"] = chk.junction;
    if (!chk.ok) j["violation"] = chk.violation;
    ok = chk.ok;
  } else {
    const auto chk = validate_tour(f.tour);
    j["valid"] = chk.ok;
    if (!chk.ok) j["violation"] = chk.violation;
    ok = chk.ok;
  }
  const auto rep = classify(f.tour);
  j["closed"] = is_closed(f.tour);
  j.update(report_json(rep));
  const std::string want = !expect.empty() ? expect : f.expected_class;
  if (!want.empty()) {
    const bool match = (Filter::class_mask(want) >> static_cast<int>(exact(rep.cls))) & 1;
    j["expected_class"] = want;
    j["matches"] = match;
    ok = ok && match;
  }
  print(out, j);
  return ok ? kExitOk : kExitMismatch;
}

int cmd_feasible(const std::string& board, std::ostream& out) {
  const BoardDims d = BoardDims::parse(board);
  const auto v = magic_feasibility(d);
  const auto mc = magic_constants(d);
  json j;
  j["board"] = d.str();
  j["status"] = to_string(v.status);
  j["reason"] = v.reason;
  j["total"] = mc.total;
  j["short_mc"] = mc.short_is_integral ? json(mc.short_mc) : json(nullptr);
  j["long_mc"] = mc.long_is_integral ? json(mc.long_mc) : json(nullptr);
  print(out, j);
  return kExitOk;
}

int cmd_emperor(const std::string& board, const std::string& cls, const std::string& expr,
                const std::string& mode, const std::string& junction, bool list,
                std::ostream& out) {
  const BoardDims d = BoardDims::parse(board);
  const Filter f = build_filter(cls, expr);
  const auto r = enumerate_emperor(d, f, parse_mode(mode),
                                   junction == "any" ? Junction::Any : Junction::Balanced);
  json j;
  j["board"] = d.str();
  j["closure"] = "any";
  j["filter"] = f.str();
  j["mode"] = mode;
  j["junction"] = junction;
  j["count"] = r.count;
  j["raw"] = r.raw;
  j["nodes"] = r.stats.nodes;
  j["pruned"] = r.stats.pruned();
  j["elapsed_ms"] = std::round(r.stats.elapsed_ms * 1000) / 1000;
  j["workers"] = 1;
  if (list) {
    json tours = json::array();
    for (const Tour& t : r.tours) {
      json e;
      e["class"] = to_token(classify(t).cls);
      e["junction"] = validate_emperor(t).junction;
      e["grid"] = grid_json(t);
      tours.push_back(e);
    }
    j["tours"] = tours;
  }
  print(out, j);
  return kExitOk;
}

json verdict_json(const FixtureVerdict& v) {
  json j;
  j["id"] = v.id;
  j["status"] = to_string(v.status);
  j["class"] = v.actual_class;
  j["reasons"] = v.reasons;
  return j;
}

int cmd_verify(const std::string& dir, const std::string& in, std::ostream& out) {
  if (!in.empty()) {
    const auto v = verify_fixture([&] {
      const std::string text = read_file(in);
      try {
        return parse_fixture(text, std::filesystem::path(in).stem());
      } catch (const ParseError& e) {
        throw UsageError(in + ": " + e.what());
      }
    }());
    print(out, verdict_json(v));
    return v.status == FixtureStatus::Fail ? kExitMismatch : kExitOk;
  }
  CorpusReport rep;
  try {
    rep = verify_corpus(dir);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  json j;
  j["status"] = to_string(rep.status);
  j["total"] = rep.entries.size();
  j["passed"] = rep.passed;
  j["failed"] = rep.failed;
  j["quarantined"] = rep.quarantined;
  json list = json::array();
  for (const auto& v : rep.entries) list.push_back(verdict_json(v));
  j["fixtures"] = list;
  print(out, j);
  return rep.status == CorpusStatus::AllPassed ? kExitOk : kExitMismatch;
}

int cmd_render(const std::string& in, bool plain, std::ostream& out) {
  const Fixture f = read_tour_file(in);
  const std::string art = render_ascii(f.tour);
  if (plain) {
    out << art;
    return kExitOk;
  }
  json j;
  j["board"] = f.tour.dims.str();
  j["ascii"] = art;
  print(out, j);
  return kExitOk;
}

}  // namespace

std::string render_ascii(const Tour& t) {
  const auto p = line_sums(t);
  const int cw = static_cast<int>(std::to_string(t.dims.cells()).size());
  int sw = 1;
  for (auto s : p.long_sums) sw = std::max(sw, static_cast<int>(std::to_string(s).size()));
  const int w = std::max(cw, sw);
  auto pad = [](const std::string& s, int width) {
    return std::string(std::max(0, width - static_cast<int>(s.size())), ' ') + s;
  };
  std::string out;
  for (int r = 0; r < t.dims.height(); ++r) {
    for (int c = 0; c < t.dims.width(); ++c) {
      out += (c ? " " : "") + pad(std::to_string(t.at({c, r})), w);
    }
    out += " | " + std::to_string(p.short_sums[r]) + "\n";
  }
  out += std::string(t.dims.width() * (w + 1) - 1, '-') + "\n";
  for (int c = 0; c < t.dims.width(); ++c) {
    out += (c ? " " : "") + pad(std::to_string(p.long_sums[c]), w);
  }
  return out + "\n";
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Knight's tour magic enumeration"};
  app.name("knightmagic");
  app.require_subcommand(1);

  SearchOptions count_opts;
  auto* count = app.add_subcommand("count", "count tours");
  add_search_options(count, count_opts);

  SearchOptions search_opts;
  std::uint64_t limit = 0;
  std::string out_dir;
  auto* search = app.add_subcommand("search", "enumerate tours as JSON lines");
  add_search_options(search, search_opts);
  auto* limit_opt = search->add_option("--limit", limit, "stop after N tours");
  search->add_option("--out", out_dir, "also write each tour as a fixture file here");

  std::string classify_in;
  std::string expect;
  auto* classify_cmd = app.add_subcommand("classify", "classify a tour file");
  classify_cmd->add_option("--in", classify_in, "tour or fixture file")->required();
  classify_cmd->add_option("--expect", expect, "exit 1 unless the class is within this token");

  std::string feasible_board;
  auto* feasible = app.add_subcommand("feasible", "parity theorems for magic tours");
  feasible->add_option("--board", feasible_board, "board size WxH")->required();

  std::string emp_board;
  std::string emp_class;
  std::string emp_filter;
  std::string emp_mode = "arithmetic";
  std::string emp_junction = "balanced";
  bool emp_list = false;
  auto* emperor = app.add_subcommand("emperor", "two-knight emperor tours");
  emperor->add_option("--board", emp_board, "board size WxH")->required();
  emperor->add_option("--class", emp_class, "class token");
  emperor->add_option("--filter", emp_filter, "predicate");
  emperor->add_option("--mode", emp_mode, "raw, arithmetic or geometric")
      ->check(CLI::IsMember({"raw", "arithmetic", "geometric"}));
  emperor->add_option("--junction", emp_junction, "balanced (two halves) or any")
      ->check(CLI::IsMember({"balanced", "any"}));
  emperor->add_flag("--list", emp_list, "include the tours");

  std::string fixtures_dir;
  std::string verify_in;
  auto* verify = app.add_subcommand("verify", "check fixture files");
  auto* dir_opt = verify->add_option("--fixtures", fixtures_dir, "directory of .tour fixtures");
  auto* in_opt = verify->add_option("--in", verify_in, "single fixture file");
  dir_opt->excludes(in_opt);
  verify->require_option(1);

  std::string render_in;
  bool plain = false;
  auto* render = app.add_subcommand("render", "ASCII grid with line sums");
  render->add_option("--in", render_in, "tour or fixture file")->required();
  render->add_flag("--plain", plain, "print the grid instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*count) return cmd_count(count_opts, out, err);
    if (*search) {
      return cmd_search(search_opts, limit_opt->count() ? std::optional(limit) : std::nullopt,
                        out_dir, out, err);
    }
    if (*classify_cmd) return cmd_classify(classify_in, expect, out);
    if (*feasible) return cmd_feasible(feasible_board, out);
    if (*emperor) return cmd_emperor(emp_board, emp_class, emp_filter, emp_mode, emp_junction, emp_list, out);
    if (*verify) return cmd_verify(fixtures_dir, verify_in, out);
    if (*render) return cmd_render(render_in, plain, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace knightmagic
