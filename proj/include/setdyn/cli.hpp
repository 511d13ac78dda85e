#pragma once

#include <setdyn/claims.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace setdyn::cli {

namespace cli_detail {

inline std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = csv.find(',', start);
    out.push_back(csv.substr(start, comma == std::string::npos ? comma : comma - start));
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

inline std::vector<rational> parse_schedule(const std::string& csv) {
  std::vector<rational> out;
  for (const std::string& tok : split_csv(csv)) {
    if (tok.empty()) throw std::invalid_argument("--eps-schedule: empty entry");
    out.push_back(parse_rational(tok));
  }
  return out;
}

inline std::vector<rational> default_schedule() {
  std::vector<rational> out;
  for (int k = 3; k <= 10; ++k) out.push_back(rational(1, std::int64_t{1} << k));
  return out;
}

struct check_request {
  std::string property;
  std::string object = "map";
  int grid = 64;
  int horizon = 64;
  bool horizon_given = false;
  rational delta = rational(1, 8);
  std::vector<rational> eps = default_schedule();
};

inline verdict no_procedure(const check_request& r) {
  return verdict::undecided({{"kind", "no-bounded-procedure"},
                             {"property", r.property},
                             {"object", r.object}});
}

inline verdict check_shift(const vertex_shift& S, const check_request& r) {
  if (r.property == "transitive") return shift_transitive(S);
  if (r.property == "periodic-dense") return shift_periodic_dense(S);
  if (r.property == "sensitive") return shift_sensitive(S);
  if (r.property == "devaney") return shift_devaney(S);
  if (r.property == "lsc")
    return verdict::yes({{"kind", "single-valued-continuous-map"}});
  if (r.property == "surjective")
    // Prepending any member of the base fiber of a point's head is again a
    // point, so the shift map is onto whenever the space is nonempty.
    return verdict::yes({{"kind", "shift-prepends-any-continuation"}});
  if (r.property == "strong-devaney")
    return detail::conjoin({{"transitive", shift_transitive(S)},
                            {"periodic_dense", shift_periodic_dense(S)},
                            {"strongly_sensitive", no_procedure(r)}});
  return no_procedure(r);
}

inline verdict check_finite(const relation_system& F, const check_request& r) {
  if (r.object == "limit") return check_shift(build_limit(F), r);
  if (r.object == "inverse-limit") return check_shift(build_limit(F.invert()), r);
  const relation_system G = r.object == "inverse" ? F.invert() : F;
  if (r.property == "transitive") return is_transitive(G);
  if (r.property == "periodic-dense") return is_periodic_dense(G);
  if (r.property == "sensitive") return is_sensitive(G);
  if (r.property == "strong-sensitive") return is_strongly_sensitive(G);
  if (r.property == "devaney") return is_devaney(G);
  if (r.property == "strong-devaney") return is_strong_devaney(G);
  if (r.property == "lsc")
    return verdict::yes({{"kind", "discrete-space"}});
  return is_surjective(G);
}

inline verdict check_pl_limit(const pl_multimap& M, const check_request& r) {
  const limit_system sys =
      r.object == "limit" ? limit_system::of(M) : limit_system::of_inverse(M);
  if (r.property == "sensitive") {
    if (const auto s = branch_separation_bound(sys))
      return verdict::yes({{"kind", "uniform-branch-separation"},
                           {"separation", s->str()},
                           {"delta", (*s / rational(2)).str()}});
    return verdict::undecided(
        {{"kind", "no-uniform-branch-separation"},
         {"reason", "no pair of full-domain step branches stays separated"}});
  }
  if (r.property == "surjective") {
    if (r.object == "limit")
      return verdict::yes({{"kind", "shift-prepends-any-continuation"}});
    // Heads of inverse-direction points range over all of [0,1], and a head
    // extends backward exactly when the base map reaches it, so the shift is
    // onto iff the base image covers the interval.
    const interval_union image = M.image_of(interval_union::unit());
    json cert = {{"kind", "image-coverage"}, {"image", image.str()}};
    return image == interval_union::unit() ? verdict::yes(std::move(cert))
                                           : verdict::no(std::move(cert));
  }
  if (r.property == "lsc")
    return verdict::yes({{"kind", "single-valued-continuous-map"}});
  return no_procedure(r);
}

inline verdict check_pl(const pl_multimap& given, const check_request& r) {
  if (r.object == "limit" || r.object == "inverse-limit") return check_pl_limit(given, r);
  const pl_multimap M = r.object == "inverse" ? given.invert() : given;
  if (r.property == "devaney" || r.property == "strong-devaney") {
    check_request sub = r;
    sub.object = "map";
    sub.property = "transitive";
    verdict t = check_pl(M, sub);
    sub.property = "periodic-dense";
    verdict d = check_pl(M, sub);
    const bool strong = r.property == "strong-devaney";
    sub.property = strong ? "strong-sensitive" : "sensitive";
    verdict s = check_pl(M, sub);
    return detail::conjoin({{"transitive", std::move(t)},
                            {"periodic_dense", std::move(d)},
                            {strong ? "strongly_sensitive" : "sensitive", std::move(s)}});
  }
  if (r.property == "transitive") {
    const int resolution =
        std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(r.grid))) - 1);
    return pl_is_transitive_bounded(M, resolution, r.horizon);
  }
  if (r.property == "periodic-dense") {
    // Bounded from below only: points of period beyond the cap stay unseen,
    // so a partial cover never refutes density.
    const int cap = r.horizon_given ? r.horizon : 8;
    const auto rep = pl_periodic_points_bounded(M, cap, 512);
    json cert = {{"kind", "bounded-periodic-points"},
                 {"max_period", cap},
                 {"period_reached", rep.period_reached},
                 {"points", rep.all.str()}};
    return rep.all == interval_union::unit() ? verdict::yes(std::move(cert))
                                             : verdict::undecided(std::move(cert));
  }
  if (r.property == "sensitive")
    return claims_detail::negate(find_non_sensitivity_witness(M, r.delta, r.horizon));
  if (r.property == "strong-sensitive")
    return verify_strong_sensitivity(M, r.delta, r.grid, r.eps, r.horizon);
  if (r.property == "lsc") return is_lsc(M);
  const interval_union image = M.image_of(interval_union::unit());
  json cert = {{"kind", "image-coverage"}, {"image", image.str()}};
  return image == interval_union::unit() ? verdict::yes(std::move(cert))
                                         : verdict::no(std::move(cert));
}

inline int run_check(const std::string& file, const check_request& r) {
  const parsed_system sys = load_system(file);
  const verdict v = std::holds_alternative<relation_system>(sys)
                        ? check_finite(std::get<relation_system>(sys), r)
                        : check_pl(std::get<pl_multimap>(sys), r);
  const json out = {{"file", file},
                    {"property", r.property},
                    {"object", r.object},
                    {"verdict", v.to_json()}};
  std::cout << out.dump(2) << "\n";
  return v.is_undecided() ? 3 : 0;
}

inline int run_oracle(const std::string& file, int depth, int period) {
  const parsed_system sys = load_system(file);
  const auto* F = std::get_if<relation_system>(&sys);
  if (!F) {
    std::cerr << "error: the oracle runs on finite systems only\n";
    return 2;
  }
  if (period == 0) period = depth;
  const shift_oracle_bundle bundle = shift_oracle(build_limit(*F), depth, period);
  const json out = {{"depth", depth}, {"period", period}, {"bundle", bundle.to_json()}};
  std::cout << out.dump(2) << "\n";
  const bool blind = bundle.transitive.is_undecided() && bundle.dense.is_undecided() &&
                     bundle.sensitive.is_undecided();
  return blind ? 3 : 0;
}

inline int run_harness(const std::string& ids, int exhaustive_n, int random_count,
                       std::uint64_t seed, const std::string& out_file) {
  std::vector<const claim*> selected;
  if (ids.empty() || ids == "all") {
    for (const auto& c : claim_registry()) selected.push_back(&c);
  } else {
    for (const std::string& id : split_csv(ids)) selected.push_back(&find_claim(id));
  }
  std::vector<claim_report> reports;
  for (const claim* c : selected) {
    if (c->is_example()) {
      reports.push_back(run_claim(c->id));
      continue;
    }
    if (exhaustive_n > 0) {
      const auto fam = family_descriptor::exhaustive(exhaustive_n);
      reports.push_back(run_claim_over(*c, fam.instances(), fam.str()));
    } else {
      reports.push_back(run_claim(c->id));
    }
    if (random_count > 0) {
      const auto fam = family_descriptor::random(4, random_count, seed);
      reports.push_back(run_claim_over(*c, fam.instances(), fam.str()));
    }
  }
  const json arr = reports_to_json(reports);
  if (!out_file.empty()) {
    std::ofstream out(out_file);
    if (!out) {
      std::cerr << "error: " << out_file << ": cannot write\n";
      return 2;
    }
    out << arr.dump(2) << "\n";
    for (const auto& rep : reports)
      std::cout << rep.id << "  " << to_string(rep.status) << "\n";
  } else {
    std::cout << arr.dump(2) << "\n";
  }
  const bool blind = std::all_of(reports.begin(), reports.end(), [](const claim_report& rep) {
    return rep.status == claim_status::undecided;
  });
  return blind ? 3 : 0;
}

inline int run_examples() {
  const auto reports = example_suite();
  for (const auto& rep : reports) std::cout << rep.id << "  " << to_string(rep.status) << "\n";
  const bool blind = std::all_of(reports.begin(), reports.end(), [](const claim_report& rep) {
    return rep.status == claim_status::undecided;
  });
  return blind ? 3 : 0;
}

inline int run_report(const std::string& file) {
  std::ifstream in(file);
  if (!in) {
    std::cerr << "error: " << file << ": cannot open\n";
    return 2;
  }
  json arr;
  try {
    arr = json::parse(in);
  } catch (const json::parse_error& e) {
    std::cerr << "error: " << file << ": " << e.what() << "\n";
    return 2;
  }
  if (!arr.is_array()) {
    std::cerr << "error: " << file << ": expected a JSON array of claim reports\n";
    return 2;
  }
  for (const auto& rep : arr) {
    for (const char* key : {"id", "status", "instances_evaluated", "witnesses", "notes"})
      if (!rep.is_object() || !rep.contains(key)) {
        std::cerr << "error: " << file << ": report entry missing \"" << key << "\"\n";
        return 2;
      }
    std::cout << rep["id"].get<std::string>() << "  " << rep["status"].get<std::string>()
              << "  [" << rep["instances_evaluated"].get<std::int64_t>() << " instances]\n";
    for (const auto& note : rep["notes"]) std::cout << "  - " << note.get<std::string>() << "\n";
    for (const auto& w : rep["witnesses"]) std::cout << "  witness: " << w.dump() << "\n";
  }
  return 0;
}

}  // namespace cli_detail

inline int run(int argc, const char* const* argv) {
  CLI::App app{"exact checks for set-valued dynamics and their shift limits"};
  app.require_subcommand(1);

  std::string check_file;
  cli_detail::check_request req;
  std::string delta_str = "1/8";
  std::string eps_csv;
  auto* check = app.add_subcommand("check", "decide one property of one system");
  check->add_option("file", check_file, "system description (JSON)")->required();
  check
      ->add_option("--property", req.property,
                   "property to decide: transitive, periodic-dense, sensitive, "
                   "strong-sensitive, devaney, strong-devaney, lsc, surjective")
      ->required()
      ->check(CLI::IsMember({"transitive", "periodic-dense", "sensitive", "strong-sensitive",
                             "devaney", "strong-devaney", "lsc", "surjective"}));
  check->add_option("--object", req.object, "what to check: map, inverse, limit, inverse-limit")
      ->check(CLI::IsMember({"map", "inverse", "limit", "inverse-limit"}));
  check->add_option("--grid", req.grid, "grid resolution for interval searches (step 1/N)")
      ->check(CLI::PositiveNumber);
  auto* horizon_opt =
      check->add_option("--horizon", req.horizon,
                        "orbit horizon; for periodic-dense, the period cap (default 8)")
          ->check(CLI::PositiveNumber);
  check->add_option("--eps-schedule", eps_csv,
                    "comma-separated rational neighborhood radii (default 2^-3..2^-10)");
  check->add_option("--delta", delta_str, "separation threshold as a rational (default 1/8)");

  std::string oracle_file;
  int depth = 0;
  int period = 0;
  auto* oracle = app.add_subcommand("oracle", "brute-force shift verdicts for a finite system");
  oracle->add_option("file", oracle_file, "system description (JSON)")->required();
  oracle->add_option("--depth", depth, "word enumeration depth")->required();
  oracle->add_option("--period", period, "period budget multiplier (default: the depth)")
      ->check(CLI::PositiveNumber);

  std::string claim_ids = "all";
  int exhaustive_n = 0;
  int random_count = 0;
  std::uint64_t seed = 0;
  std::string out_file;
  auto* harness = app.add_subcommand("harness", "adjudicate registered claims over families");
  harness->add_option("--claims", claim_ids, "\"all\" or a comma-separated list of claim ids");
  harness->add_option("--exhaustive", exhaustive_n,
                      "run quantified claims over every system on N states");
  harness->add_option("--random", random_count,
                      "additionally run quantified claims over COUNT random 4-state systems");
  harness->add_option("--seed", seed, "seed for the random family");
  harness->add_option("--out", out_file, "write the JSON report here instead of stdout");

  app.add_subcommand("examples", "adjudicate the worked-example claims");

  std::string report_file;
  auto* report = app.add_subcommand("report", "render a harness report as text");
  report->add_option("file", report_file, "report written by harness --out")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(check)) {
      req.horizon_given = horizon_opt->count() > 0;
      req.delta = parse_rational(delta_str);
      if (!eps_csv.empty()) req.eps = cli_detail::parse_schedule(eps_csv);
      return cli_detail::run_check(check_file, req);
    }
    if (app.got_subcommand(oracle)) return cli_detail::run_oracle(oracle_file, depth, period);
    if (app.got_subcommand(harness))
      return cli_detail::run_harness(claim_ids, exhaustive_n, random_count, seed, out_file);
    if (app.got_subcommand(report)) return cli_detail::run_report(report_file);
    return cli_detail::run_examples();
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const not_invertible_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace setdyn::cli
