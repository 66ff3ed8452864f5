#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "xcover/gen.hpp"
#include "xcover/instance.hpp"
#include "xcover/solver.hpp"

namespace xcover::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

unsigned default_threads() {
  const char* env = std::getenv("XCOVER_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) throw UsageError("XCOVER_THREADS must be a positive integer");
  return static_cast<unsigned>(n);
}

Engine engine_from(const std::string& name) {
  auto e = parse_engine(name);
  if (!e) throw UsageError("unknown engine '" + name + "'");
  return *e;
}

std::string instance_label(const std::string& path) { return fs::path(path).filename().string(); }

std::string status_name(SolveReport::Status s) { return s == SolveReport::Status::ok ? "ok" : "TO"; }

nlohmann::json report_json(const std::string& instance, const SolveReport& r) {
  const bool ok = r.status == SolveReport::Status::ok;
  return {{"instance", instance},
          {"engine", std::string(engine_name(r.engine))},
          {"threads", r.threads},
          {"count", ok ? r.count.str() : std::string()},
          {"nodes", r.nodes},
          {"subs", r.subs},
          {"time_ms", r.time_ms},
          {"cache_hits", r.cache_hits},
          {"cache_misses", r.cache_misses},
          {"status", status_name(r.status)}};
}

void print_report(std::ostream& out, const std::string& instance, const SolveReport& r) {
  out << "instance  " << instance << '\n'
      << "engine    " << engine_name(r.engine) << '\n'
      << "threads   " << r.threads << '\n'
      << "count     " << (r.status == SolveReport::Status::ok ? r.count.str() : "TO") << '\n'
      << "nodes     " << r.nodes << '\n'
      << "subs      " << r.subs << '\n'
      << "cache     " << r.cache_hits << " hits, " << r.cache_misses << " misses\n"
      << "time_ms   " << std::fixed << std::setprecision(3) << r.time_ms << '\n';
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

std::vector<std::string> bench_inputs(const std::string& target) {
  std::vector<std::string> files;
  if (fs::is_directory(target)) {
    for (const auto& entry : fs::directory_iterator(target)) {
      const auto ext = entry.path().extension().string();
      if (entry.is_regular_file() && (ext == ".xc" || ext == ".matrix" || ext == ".mat"))
        files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
  } else if (fs::is_regular_file(target)) {
    files.push_back(target);
  } else {
    throw std::runtime_error("no such file or directory: " + target);
  }
  return files;
}

template <class T>
std::vector<T> split_list(const std::string& s, T (*convert)(const std::string&)) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(convert(item));
  if (out.empty()) throw UsageError("empty list '" + s + "'");
  return out;
}

unsigned thread_count(const std::string& s) {
  try {
    const int n = std::stoi(s);
    if (n >= 1) return static_cast<unsigned>(n);
  } catch (const std::exception&) {
  }
  throw UsageError("bad thread count '" + s + "'");
}

struct CountOpts {
  std::string file;
  std::string engine = "dxd";
  unsigned threads = 1;
  bool json = false;
  double timeout_s = 0;
};

int cmd_count(const CountOpts& o, std::ostream& out) {
  const Instance inst = load_instance(o.file);
  SolveConfig cfg;
  cfg.engine = engine_from(o.engine);
  cfg.threads = o.threads;
  if (o.timeout_s > 0) cfg.timeout = std::chrono::duration<double>(o.timeout_s);
  const SolveReport r = solve(inst, cfg);
  if (o.json)
    out << report_json(instance_label(o.file), r).dump() << '\n';
  else
    print_report(out, instance_label(o.file), r);
  return 0;
}

struct CompileOpts {
  std::string file;
  std::string engine = "dxd";
  unsigned threads = 1;
  std::string dot;
  std::string dump;
  std::size_t enumerate = 0;
};

int cmd_compile(const CompileOpts& o, std::ostream& out) {
  const Instance inst = load_instance(o.file);
  SolveConfig cfg;
  cfg.engine = engine_from(o.engine);
  if (cfg.engine == Engine::oracle) throw UsageError("compile needs a diagram engine (dxz, dxd or dyndxd)");
  cfg.threads = o.threads;
  const SolveReport r = solve(inst, cfg);
  const NodeStore& store = *r.store;
  const NodeId root = *r.root;
  auto label = [&](RowId v) { return inst.row(v).name; };
  // "-" sends an export to stdout.
  if (o.dot == "-") {
    store.export_dot(root, out, label);
  } else if (!o.dot.empty()) {
    auto f = open_out(o.dot);
    store.export_dot(root, f, label);
  }
  if (o.dump == "-") {
    store.dump(root, out);
  } else if (!o.dump.empty()) {
    auto f = open_out(o.dump);
    store.dump(root, f);
  }
  out << "count " << r.count.str() << "\nnodes " << r.nodes << "\nsubs " << r.subs << '\n';
  if (o.enumerate > 0) {
    for (const auto& cover : store.enumerate(root, o.enumerate)) {
      for (std::size_t i = 0; i < cover.size(); ++i) out << (i ? " " : "") << label(cover[i]);
      out << '\n';
    }
  }
  return 0;
}

struct GenOpts {
  std::string graph;
  std::string out;
  GenConfig cfg;
};

int cmd_gen(const GenOpts& o, std::ostream& out) {
  const Instance inst = generate(load_graph(o.graph), o.cfg);
  if (o.out.empty()) {
    serialize_instance(inst, Format::xc, out);
  } else {
    auto f = open_out(o.out);
    serialize_instance(inst, format_for_path(o.out), f);
  }
  return 0;
}

struct BenchOpts {
  std::string target;
  std::string engines = "dxz,dxd,dyndxd";
  std::string threads;
  double timeout_s = 60;
  std::string csv;
  std::string ratios;
};

int cmd_bench(const BenchOpts& o, unsigned fallback_threads, std::ostream& out) {
  const auto engines = split_list<Engine>(o.engines, engine_from);
  const auto threads =
      o.threads.empty() ? std::vector<unsigned>{fallback_threads} : split_list<unsigned>(o.threads, thread_count);
  const auto files = bench_inputs(o.target);

  std::ofstream csv_file;
  std::ostream* csv = &out;
  if (!o.csv.empty()) {
    csv_file = open_out(o.csv);
    csv = &csv_file;
  }
  *csv << "instance,engine,threads,count,nodes,subs,time_ms,status\n";

  struct Sizes {
    std::size_t dxz = 0, dxd = 0;
    std::uint64_t subs = 0;
  };
  std::map<std::string, Sizes> sizes;
  for (const auto& file : files) {
    const Instance inst = load_instance(file);
    const std::string name = instance_label(file);
    for (unsigned t : threads) {
      for (Engine e : engines) {
        SolveConfig cfg;
        cfg.engine = e;
        cfg.threads = t;
        if (o.timeout_s > 0) cfg.timeout = std::chrono::duration<double>(o.timeout_s);
        const SolveReport r = solve(inst, cfg);
        const bool ok = r.status == SolveReport::Status::ok;
        *csv << name << ',' << engine_name(e) << ',' << t << ',' << (ok ? r.count.str() : "") << ','
             << (ok ? std::to_string(r.nodes) : "") << ',' << r.subs << ',' << std::fixed << std::setprecision(3)
             << r.time_ms << ',' << status_name(r.status) << '\n';
        if (ok && t == threads.front()) {
          if (e == Engine::dxz) sizes[name].dxz = r.nodes;
          if (e == Engine::dxd) {
            sizes[name].dxd = r.nodes;
            sizes[name].subs = r.subs;
          }
        }
      }
    }
  }

  if (!o.ratios.empty()) {
    auto f = open_out(o.ratios);
    f << "instance,dxz_nodes,dxd_nodes,subs,ratio\n";
    for (const auto& [name, s] : sizes) {
      if (s.dxz == 0 || s.dxd == 0 || s.subs < 2) continue;
      f << name << ',' << s.dxz << ',' << s.dxd << ',' << s.subs << ',' << std::fixed << std::setprecision(4)
        << static_cast<double>(s.dxd) / static_cast<double>(s.dxz) << '\n';
    }
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact cover counting and compilation to ZBDDs and decision-ZDNNFs"};
  app.require_subcommand(1);

  unsigned threads = 1;
  try {
    threads = default_threads();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  const std::vector<std::string> engines{"dxz", "dxd", "dyndxd", "oracle"};

  CountOpts count;
  count.threads = threads;
  auto* c = app.add_subcommand("count", "Count exact covers");
  c->add_option("file", count.file, "Instance file (.xc, .matrix)")->required();
  c->add_option("--engine", count.engine)->check(CLI::IsMember(engines));
  c->add_option("--threads", count.threads)->check(CLI::PositiveNumber);
  c->add_flag("--json", count.json, "Print a JSON report");
  c->add_option("--timeout-s", count.timeout_s, "Give up after this many seconds (0 = never)");

  CompileOpts compile;
  compile.threads = threads;
  auto* k = app.add_subcommand("compile", "Compile to a diagram and export it");
  k->add_option("file", compile.file)->required();
  k->add_option("--engine", compile.engine)->check(CLI::IsMember({"dxz", "dxd", "dyndxd"}));
  k->add_option("--threads", compile.threads)->check(CLI::PositiveNumber);
  k->add_option("--dot", compile.dot, "Write Graphviz output here (- for stdout)");
  k->add_option("--dump", compile.dump, "Write the node dump here (- for stdout)");
  k->add_option("--enumerate", compile.enumerate, "Print the first N covers");

  GenOpts gen;
  auto* g = app.add_subcommand("gen", "Build an instance from a graph");
  g->add_option("graph", gen.graph, "Edge list: '<n> <m>' then '<u> <v>' lines")->required();
  g->add_option("--seed", gen.cfg.seed);
  g->add_option("--fraction", gen.cfg.element_fraction)->check(CLI::Range(0.0, 1.0));
  g->add_option("--max-length", gen.cfg.max_cycle_length);
  g->add_option("--max-cycles", gen.cfg.max_cycles);
  g->add_option("--out", gen.out, "Output path (stdout if omitted)");

  BenchOpts bench;
  auto* b = app.add_subcommand("bench", "Run engines over a directory of instances");
  b->add_option("dir", bench.target, "Directory of instances, or one instance file")->required();
  b->add_option("--engines", bench.engines, "Comma-separated engines");
  b->add_option("--threads", bench.threads, "Comma-separated thread counts");
  b->add_option("--timeout-s", bench.timeout_s, "Per-run timeout in seconds (0 = none)");
  b->add_option("--csv", bench.csv, "CSV output path (stdout if omitted)");
  b->add_option("--ratios", bench.ratios, "Write dxd/dxz node-count ratios here");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c) return cmd_count(count, out);
    if (*k) return cmd_compile(compile, out);
    if (*g) return cmd_gen(gen, out);
    if (*b) return cmd_bench(bench, threads, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace xcover::cli
