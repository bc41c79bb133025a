// Command-line driver: every library operation behind a subcommand, JSON
// or text output, a byte-stable result cache, a standalone certificate
// verifier and the verification suite.
//
// Exit codes: 0 success / verdict yes; 1 verdict no, failed verification
// or failed suite; 2 parse, budget or usage errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "invgen/json_io.hpp"
#include "invgen/suite.hpp"

namespace fs = std::filesystem;
using namespace invgen;

namespace {

constexpr const char *kVersion = "invgen 1.0.0";

struct CliState {
  RunConfig config;
  std::string cache_dir;
  bool no_cache = false;
};

uint64_t fnv64(const std::string &s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string cache_key(const CliState &st) {
  std::ostringstream key;
  key << kVersion << '|' << st.config.command;
  for (const auto &a : st.config.args) key << '|' << a;
  key << '|' << st.config.budgets.element_cap << '|'
      << st.config.budgets.lattice << '|' << st.config.budgets.aut << '|'
      << st.config.budgets.tuples << '|' << st.config.seed << '|'
      << st.config.format;
  std::ostringstream hex;
  hex << std::hex << fnv64(key.str());
  return hex.str();
}

// Returns the cached document, or computes / stores / returns it.
std::string with_cache(const CliState &st,
                       const std::function<std::string()> &compute) {
  if (st.cache_dir.empty() || st.no_cache) return compute();
  fs::path file = fs::path(st.cache_dir) / (cache_key(st) + ".json");
  if (fs::exists(file)) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::string doc = compute();
  fs::create_directories(st.cache_dir);
  std::ofstream out(file, std::ios::binary);
  out << doc;
  return doc;
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

// Text rendering is a view of the JSON document, so cached and fresh runs
// print identically in either format.
void emit(const CliState &st, const std::string &doc) {
  if (st.config.format == "json") {
    std::cout << doc;
    return;
  }
  json j = json::parse(doc);
  const std::string schema = j.value("schema", "");
  if (schema == "invgen.group_info/1") {
    std::cout << j["group"].get<std::string>() << ": order " << j["order"]
              << ", classes " << j["class_count"] << ", class sizes "
              << j["class_sizes"].dump() << "\n"
              << "maximal subgroup class orders: "
              << j["maximal_orders"].dump() << "\n"
              << "frattini order " << j["frattini_order"] << ", aut "
              << j["aut_order"] << ", out " << j["out_order"] << "\n";
  } else if (schema == "invgen.certificate/1") {
    std::cout << "verdict: " << j["verdict"].get<std::string>() << "\n";
    if (j.contains("refutation"))
      std::cout << "refuting maximal subgroup of order "
                << j["refutation"]["maximal_order"] << "\n";
  } else if (schema == "invgen.di/1") {
    std::cout << j["group"].get<std::string>() << ": d_I = " << j["value"]
              << ", witness classes " << j["witness_classes"].dump() << " "
              << j["witness_elements"].dump() << "\n";
  } else if (schema == "invgen.power_check/1") {
    std::cout << "verdict: " << j["verdict"].get<std::string>() << "\n";
    if (j.contains("failure"))
      std::cout << "failure mode: "
                << j["failure"]["mode"].get<std::string>() << "\n";
  } else if (schema == "invgen.max_power/1") {
    std::cout << "max m with d_I(T^m) <= " << j["r"] << ": " << j["max_power"]
              << "  (element-tuple orbits: " << j["element_tuple_orbit_count"]
              << ", bounds (" << j["lower_bound"]["num"] << "/"
              << j["lower_bound"]["den"] << ", " << j["upper_bound"] << "])\n";
  } else if (schema == "invgen.power_bounds/1") {
    std::cout << "sandwich holds: "
              << (j["report"]["sandwich_holds"].get<bool>() ? "yes" : "no")
              << ", three-row construction ok: "
              << (j["construction_ok"].get<bool>() ? "yes" : "no") << "\n";
  } else if (schema == "invgen.verify_suite/1") {
    for (const auto &c : j["criteria"])
      std::cout << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  "
                << c["id"] << "  " << c["name"].get<std::string>() << "  ("
                << c["detail"].get<std::string>() << ")\n";
    std::cout << (j["all_pass"].get<bool>() ? "ALL PASS" : "FAILURES") << "\n";
  } else if (schema == "invgen.verify_cert/1") {
    std::cout << (j["valid"].get<bool>() ? "valid" : "invalid");
    if (!j["valid"].get<bool>())
      std::cout << ": " << j["why"].get<std::string>();
    std::cout << "\n";
  } else {
    std::cout << doc;
  }
}

GenMatrix parse_matrix_file(GroupContext &ctx, const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open matrix file: " + path);
  std::vector<std::vector<uint32_t>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<uint32_t> row;
    std::size_t start = 0;
    while (true) {
      std::size_t semi = line.find(';', start);
      std::string piece = line.substr(
          start, semi == std::string::npos ? std::string::npos : semi - start);
      Permutation p = parse_permutation(piece, ctx.group().degree());
      row.push_back(ctx.elements().index_of(p));
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw InvalidArgument("matrix rows have unequal lengths");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidArgument("matrix file is empty");
  std::vector<uint32_t> entries;
  for (const auto &r : rows)
    entries.insert(entries.end(), r.begin(), r.end());
  return make_gen_matrix(ctx, static_cast<uint32_t>(rows.size()),
                         static_cast<uint32_t>(rows.front().size()),
                         std::move(entries));
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"invariable generation toolkit"};
  app.require_subcommand(1);

  CliState st;
  app.add_option("--budget-elements", st.config.budgets.element_cap,
                 "element table cap")
      ->capture_default_str();
  app.add_option("--budget-lattice", st.config.budgets.lattice,
                 "subgroup lattice order budget")
      ->capture_default_str();
  app.add_option("--budget-aut", st.config.budgets.aut,
                 "automorphism search order budget")
      ->capture_default_str();
  app.add_option("--budget-tuples", st.config.budgets.tuples,
                 "tuple enumeration budget (|T|^r)")
      ->capture_default_str();
  app.add_option("--seed", st.config.seed, "seed for sampling checks")
      ->capture_default_str();
  app.add_option("--format", st.config.format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--cache-dir", st.cache_dir,
                 "cache directory (no caching when unset)");
  app.add_flag("--no-cache", st.no_cache, "bypass the cache");

  std::string desc, path, profile = "quick";
  std::vector<std::string> element_args;
  uint32_t rank = 2;

  auto *c_info = app.add_subcommand("group-info", "structure overview");
  c_info->add_option("descriptor", desc)->required();

  auto *c_invgen = app.add_subcommand(
      "invgen", "decide invariable generation of a set, with certificate");
  c_invgen->add_option("descriptor", desc)->required();
  c_invgen->add_option("elements", element_args, "cycle notation")->required();

  auto *c_di =
      app.add_subcommand("di", "exact invariable-generation number d_I");
  c_di->add_option("descriptor", desc)->required();

  auto *c_power = app.add_subcommand(
      "power-check",
      "check a generating matrix for a direct power (rows: one line per "
      "row, entries separated by ';')");
  c_power->add_option("descriptor", desc, "base group (nonabelian simple)")
      ->required();
  c_power->add_option("matrix-file", path)->required();

  auto *c_max = app.add_subcommand(
      "max-power", "largest m with d_I(T^m) <= r, plus sandwich bounds");
  c_max->add_option("descriptor", desc)->required();
  c_max->add_option("r", rank)->required();

  auto *c_bounds = app.add_subcommand(
      "power-bounds", "sandwich report plus the three-row construction");
  c_bounds->add_option("descriptor", desc)->required();
  c_bounds->add_option("r", rank)->required();

  auto *c_structure = app.add_subcommand(
      "structure", "classes and subgroup lattice as a cacheable document");
  c_structure->add_option("descriptor", desc)->required();

  auto *c_verify = app.add_subcommand("verify-cert",
                                      "re-check a certificate from its JSON");
  c_verify->add_option("file", path)->required();

  auto *c_suite = app.add_subcommand("verify-suite", "run the checks");
  c_suite->add_option("profile", profile)
      ->check(CLI::IsMember({"quick", "full"}));

  CLI11_PARSE(app, argc, argv);

  st.config.command = app.get_subcommands().front()->get_name();
  st.config.args = {desc, path, profile, std::to_string(rank)};
  for (const auto &e : element_args) st.config.args.push_back(e);

  try {
    if (c_info->parsed()) {
      std::string doc = with_cache(st, [&] {
        GroupContext ctx(resolve(desc), st.config.budgets);
        json sizes = json::array();
        for (const auto &c : ctx.classes().classes) sizes.push_back(c.size);
        json maximal_orders = json::array();
        for (uint32_t id : ctx.maximal_reps())
          maximal_orders.push_back(ctx.lattice().records[id].order);
        ElementMask phi = frattini_mask(ctx.group(), ctx.lattice());
        json j{{"schema", "invgen.group_info/1"},
               {"group", desc},
               {"degree", ctx.group().degree()},
               {"order", ctx.group().order()},
               {"class_count", ctx.classes().count()},
               {"class_sizes", sizes},
               {"maximal_orders", maximal_orders},
               {"frattini_order", phi.count()},
               {"aut_order", ctx.aut().size()},
               {"out_order", ctx.aut().out_order},
               {"config", run_config_json(st.config)}};
        return dump(j);
      });
      emit(st, doc);
      return 0;
    }

    if (c_invgen->parsed()) {
      bool yes = false;
      std::string doc = with_cache(st, [&] {
        GroupContext ctx(resolve(desc), st.config.budgets);
        std::vector<Permutation> s;
        for (const auto &e : element_args)
          s.push_back(parse_permutation(e, ctx.group().degree()));
        InvGenCertificate cert = invariably_generates(ctx, s);
        json j = certificate_json(cert, desc);
        j["config"] = run_config_json(st.config);
        return dump(j);
      });
      emit(st, doc);
      yes = json::parse(doc)["verdict"] == "yes";
      return yes ? 0 : 1;
    }

    if (c_di->parsed()) {
      std::string doc = with_cache(st, [&] {
        GroupContext ctx(resolve(desc), st.config.budgets);
        DIResult di = compute_dI(ctx);
        json j = di_json(ctx, di, desc);
        j["config"] = run_config_json(st.config);
        return dump(j);
      });
      emit(st, doc);
      return 0;
    }

    if (c_power->parsed()) {
      std::string doc = with_cache(st, [&] {
        GroupContext ctx(resolve(desc), st.config.budgets);
        GenMatrix a = parse_matrix_file(ctx, path);
        PowerCertificate cert = power_check(ctx, a);
        json j = power_certificate_json(ctx, cert, a, desc);
        j["config"] = run_config_json(st.config);
        return dump(j);
      });
      emit(st, doc);
      return json::parse(doc)["verdict"] == "yes" ? 0 : 1;
    }

    if (c_max->parsed()) {
      std::string doc = with_cache(st, [&] {
        GroupContext ctx(resolve(desc), st.config.budgets);
        PowerReport rep = max_power_report(ctx, rank);
        json j = power_report_json(ctx, rep, desc);
        j["config"] = run_config_json(st.config);
        return dump(j);
      });
      emit(st, doc);
      return json::parse(doc)["sandwich_holds"].get<bool>() ? 0 : 1;
    }

    if (c_bounds->parsed()) {
      std::string doc = with_cache(st, [&] {
        GroupDescriptor d = parse_descriptor(desc);
        uint64_t q =
            d.kind == GroupDescriptor::Kind::psl2 ? d.n : uint64_t{0};
        GroupContext ctx(resolve(d), st.config.budgets);
        PowerBoundsReport rep = power_bounds_report(ctx, rank, q);
        json j = power_bounds_json(ctx, rep, desc);
        j["config"] = run_config_json(st.config);
        return dump(j);
      });
      emit(st, doc);
      json j = json::parse(doc);
      return j["report"]["sandwich_holds"].get<bool>() &&
                     j["construction_ok"].get<bool>()
                 ? 0
                 : 1;
    }

    if (c_structure->parsed()) {
      std::string doc = with_cache(st, [&] {
        GroupContext ctx(resolve(desc), st.config.budgets);
        json j = structure_json(ctx, desc);
        j["config"] = run_config_json(st.config);
        return dump(j);
      });
      emit(st, doc);
      return 0;
    }

    if (c_verify->parsed()) {
      std::ifstream in(path);
      if (!in) throw InvalidArgument("cannot open certificate file: " + path);
      json parsed = json::parse(in);
      InvGenCertificate cert = certificate_from_json(parsed);
      std::string why;
      bool valid = verify_certificate(cert, &why, st.config.budgets.element_cap);
      json j{{"schema", "invgen.verify_cert/1"},
             {"valid", valid},
             {"why", why},
             {"config", run_config_json(st.config)}};
      emit(st, dump(j));
      return valid ? 0 : 1;
    }

    if (c_suite->parsed()) {
      SuiteOptions opts;
      opts.full = profile == "full";
      opts.budgets = st.config.budgets;
      opts.seed = st.config.seed;
      SuiteRun run = run_verify_suite(opts);
      run.artifact["config"] = run_config_json(st.config);
      if (st.config.format == "json") {
        std::cout << dump(run.artifact);
      } else {
        emit(st, dump(run.artifact));
      }
      return run.all_pass ? 0 : 1;
    }
  } catch (const json::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
