#pragma once

// JSON serialization for certificates, reports and cached structure
// tables.  All documents carry a versioned "schema" field.  Output is
// deterministic: nlohmann::json orders keys, and every numeric field is an
// integer (bounds are exact fractions), so identical inputs give identical
// bytes.

#include <string>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "context.hpp"
#include "invgen.hpp"
#include "power.hpp"

namespace invgen {

using nlohmann::json;

struct RunConfig {
  std::string command;
  std::vector<std::string> args;
  Budgets budgets;
  uint64_t seed = 0;
  std::string format = "json";
};

inline json run_config_json(const RunConfig &cfg) {
  return json{{"command", cfg.command},
              {"args", cfg.args},
              {"budgets",
               {{"elements", cfg.budgets.element_cap},
                {"lattice", cfg.budgets.lattice},
                {"aut", cfg.budgets.aut},
                {"tuples", cfg.budgets.tuples}}},
              {"seed", cfg.seed},
              {"format", cfg.format}};
}

inline json perm_list_json(const std::vector<Permutation> &perms) {
  json arr = json::array();
  for (const auto &p : perms) arr.push_back(to_cycle_string(p));
  return arr;
}

inline json group_json(uint32_t degree, const std::vector<Permutation> &gens) {
  return json{{"schema", "invgen.group/1"},
              {"degree", degree},
              {"generators", perm_list_json(gens)}};
}

inline PermGroup group_from_json(const json &j) {
  uint32_t degree = j.at("degree").get<uint32_t>();
  std::vector<Permutation> gens;
  for (const auto &s : j.at("generators"))
    gens.push_back(parse_permutation(s.get<std::string>(), degree));
  return PermGroup::from_generators(degree, gens);
}

// ---------------------------------------------------------------------
// Invariable-generation certificates.

inline json certificate_json(const InvGenCertificate &cert,
                             const std::string &descriptor = "") {
  json j{{"schema", "invgen.certificate/1"},
         {"degree", cert.degree},
         {"group_generators", perm_list_json(cert.group_generators)},
         {"group_order", cert.group_order},
         {"elements", perm_list_json(cert.elements)},
         {"verdict", cert.yes ? "yes" : "no"}};
  if (!descriptor.empty()) j["group"] = descriptor;
  if (cert.yes) {
    json entries = json::array();
    for (const auto &e : cert.yes_entries)
      entries.push_back(json{
          {"maximal_order", e.maximal.order},
          {"maximal_generators", perm_list_json(e.maximal.generators)},
          {"witness_index", e.witness_index},
          {"witness_class", e.witness_class}});
    j["witnesses"] = std::move(entries);
  } else {
    j["refutation"] =
        json{{"maximal_order", cert.refuting_maximal.order},
             {"maximal_generators",
              perm_list_json(cert.refuting_maximal.generators)},
             {"conjugators", perm_list_json(cert.conjugators)}};
  }
  return j;
}

inline InvGenCertificate certificate_from_json(const json &j) {
  if (j.at("schema").get<std::string>() != "invgen.certificate/1")
    throw ParseError("unknown certificate schema");
  InvGenCertificate cert;
  cert.degree = j.at("degree").get<uint32_t>();
  auto perms = [&](const json &arr) {
    std::vector<Permutation> out;
    for (const auto &s : arr)
      out.push_back(parse_permutation(s.get<std::string>(), cert.degree));
    return out;
  };
  cert.group_generators = perms(j.at("group_generators"));
  cert.group_order = j.at("group_order").get<uint64_t>();
  cert.elements = perms(j.at("elements"));
  cert.yes = j.at("verdict").get<std::string>() == "yes";
  if (cert.yes) {
    for (const auto &e : j.at("witnesses")) {
      InvGenCertificate::YesEntry entry;
      entry.maximal.order = e.at("maximal_order").get<uint64_t>();
      entry.maximal.generators = perms(e.at("maximal_generators"));
      entry.witness_index = e.at("witness_index").get<uint32_t>();
      entry.witness_class = e.at("witness_class").get<uint32_t>();
      cert.yes_entries.push_back(std::move(entry));
    }
  } else {
    const json &r = j.at("refutation");
    cert.refuting_maximal.order = r.at("maximal_order").get<uint64_t>();
    cert.refuting_maximal.generators = perms(r.at("maximal_generators"));
    cert.conjugators = perms(r.at("conjugators"));
  }
  return cert;
}

// ---------------------------------------------------------------------
// d_I results.

inline json di_json(GroupContext &ctx, const DIResult &di,
                    const std::string &descriptor) {
  json incidence = json::array();
  for (const auto &row : di.incidence) {
    std::string bits;
    for (bool b : row) bits += b ? '1' : '0';
    incidence.push_back(bits);
  }
  json witness_elems = json::array();
  for (uint32_t c : di.witness_classes)
    witness_elems.push_back(to_cycle_string(
        ctx.elements().elems[ctx.classes().classes[c].representative]));
  json maximal_orders = json::array();
  for (uint32_t id : di.maximal_rep_ids)
    maximal_orders.push_back(ctx.lattice().records[id].order);
  return json{{"schema", "invgen.di/1"},
              {"group", descriptor},
              {"order", ctx.group().order()},
              {"value", di.value},
              {"witness_classes", di.witness_classes},
              {"witness_elements", witness_elems},
              {"class_count", ctx.classes().count()},
              {"maximal_orders", maximal_orders},
              {"incidence", incidence}};
}

// ---------------------------------------------------------------------
// Power analysis.

inline json gen_matrix_json(GroupContext &tctx, const GenMatrix &a) {
  json rows = json::array();
  for (uint32_t i = 0; i < a.rows; ++i) {
    json row = json::array();
    for (uint32_t j = 0; j < a.cols; ++j)
      row.push_back(to_cycle_string(tctx.elements().elems[a.entry(i, j)]));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json power_certificate_json(GroupContext &tctx,
                                   const PowerCertificate &cert,
                                   const GenMatrix &a,
                                   const std::string &descriptor) {
  json j{{"schema", "invgen.power_check/1"},
         {"base", descriptor},
         {"rows", a.rows},
         {"cols", a.cols},
         {"matrix", gen_matrix_json(tctx, a)},
         {"verdict", cert.yes() ? "yes" : "no"}};
  switch (cert.verdict) {
  case PowerCertificate::Verdict::yes: {
    json cols = json::array();
    for (const auto &c : cert.column_certificates)
      cols.push_back(certificate_json(c));
    j["column_certificates"] = std::move(cols);
    j["column_class_canonical"] = cert.column_class_canonical;
    break;
  }
  case PowerCertificate::Verdict::fail_column:
    j["failure"] = json{{"mode", "column"},
                        {"column", cert.bad_column},
                        {"certificate",
                         certificate_json(cert.column_refutation)}};
    break;
  case PowerCertificate::Verdict::fail_pair: {
    // The automorphism is recorded by its images on the base generators.
    json gen_images = json::array();
    for (const auto &g : tctx.group().generators()) {
      uint32_t idx = tctx.elements().index_of(g);
      gen_images.push_back(
          to_cycle_string(tctx.elements().elems[cert.automorphism[idx]]));
    }
    j["failure"] = json{{"mode", "pair"},
                        {"columns", {cert.pair_first, cert.pair_second}},
                        {"automorphism_on_generators", gen_images},
                        {"row_conjugators",
                         perm_list_json(cert.row_conjugators)}};
    break;
  }
  }
  return j;
}

inline json cross_check_json(const CrossCheckReport &r) {
  json j{{"schema", "invgen.cross_check/1"},
         {"matrix_passed", r.matrix_passed},
         {"trials", r.trials},
         {"consistent", r.consistent}};
  if (r.matrix_passed) {
    j["sampling_clean"] = r.sampling_clean;
    if (r.counterexample) {
      j["counterexample"] =
          json{{"trial", r.counterexample->trial},
               {"conjugators", perm_list_json(r.counterexample->conjugators)}};
    }
  } else {
    j["witness_verified"] = r.witness_verified;
    j["witness_index"] = r.witness_index;
  }
  return j;
}

inline json power_report_json(GroupContext &tctx, const PowerReport &r,
                              const std::string &descriptor) {
  return json{{"schema", "invgen.max_power/1"},
              {"base", descriptor},
              {"r", r.r},
              {"class_count", r.class_count},
              {"out_order", r.out_order},
              {"max_power", r.max_power},
              {"element_tuple_orbit_count", r.element_tuple_orbit_count},
              {"surviving_class_vectors", r.surviving_class_vectors},
              {"surviving_tuple_count", r.surviving_tuple_count},
              {"lower_bound", {{"num", r.lower_num}, {"den", r.lower_den}}},
              {"upper_bound", r.upper},
              {"sandwich_holds", r.sandwich_holds},
              {"witness_class_vectors", r.witness_class_vectors},
              {"witness_matrix", gen_matrix_json(tctx, r.witness)}};
}

inline json power_bounds_json(GroupContext &tctx, const PowerBoundsReport &r,
                              const std::string &descriptor) {
  json constructed = json::array();
  for (const auto &a : r.constructed)
    constructed.push_back(json{{"cols", a.cols},
                               {"matrix", gen_matrix_json(tctx, a)}});
  json j{{"schema", "invgen.power_bounds/1"},
         {"base", descriptor},
         {"report", power_report_json(tctx, r.report, descriptor)},
         {"three_row_limit", r.cor_limit},
         {"construction_ok", r.construction_ok},
         {"constructed", std::move(constructed)},
         {"k_over_out", {{"num", r.k_over_out_num}, {"den", r.k_over_out_den}}}};
  if (r.lie_c_den != 1 || r.lie_c_num != 0)
    j["lie_type_c"] = json{{"num", r.lie_c_num}, {"den", r.lie_c_den}};
  return j;
}

// ---------------------------------------------------------------------
// Cached structure tables (classes + lattice), hex-encoded masks.

inline json structure_json(GroupContext &ctx, const std::string &descriptor) {
  json classes = json::array();
  for (const auto &c : ctx.classes().classes)
    classes.push_back(json{
        {"representative",
         to_cycle_string(ctx.elements().elems[c.representative])},
        {"size", c.size},
        {"mask", c.mask.to_hex()}});
  json subgroups = json::array();
  for (const auto &rec : ctx.lattice().records) {
    json gens = json::array();
    for (uint32_t e : rec.gens)
      gens.push_back(to_cycle_string(ctx.elements().elems[e]));
    subgroups.push_back(json{{"mask", rec.mask.to_hex()},
                             {"order", rec.order},
                             {"generators", gens},
                             {"subgroup_class", rec.subgroup_class},
                             {"maximal", rec.maximal}});
  }
  return json{{"schema", "invgen.structure/1"},
              {"group", descriptor},
              {"order", ctx.group().order()},
              {"element_order", "lexicographic by image array, identity first"},
              {"composition", "left-to-right: (p*q)(x) = q(p(x))"},
              {"classes", std::move(classes)},
              {"subgroups", std::move(subgroups)}};
}

inline json frattini_json(const FrattiniReport &r, const std::string &desc) {
  return json{{"schema", "invgen.frattini/1"},
              {"group", desc},
              {"frattini_order", r.frattini_order},
              {"di_group", r.di_group.value},
              {"di_quotient", r.di_quotient.value},
              {"equal", r.equal}};
}

inline json subadditivity_json(const SubadditivityReport &r,
                               const std::string &desc) {
  return json{{"schema", "invgen.subadditivity/1"},
              {"group", desc},
              {"normal_order", r.normal_order},
              {"di_group", r.di_group},
              {"di_normal", r.di_normal},
              {"di_quotient", r.di_quotient},
              {"holds", r.holds}};
}

} // namespace invgen
