#include "migra/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "migra/check.hpp"
#include "migra/compare.hpp"
#include "migra/ctree.hpp"
#include "migra/ecws.hpp"
#include "migra/report_json.hpp"

namespace migra::cli {

namespace {

struct Failure {
  int code;
  std::string message;
};

ecws::BlockTree load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kParse, "cannot open " + path};
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ecws::parse(buf.str());
  } catch (const ecws::EcwsError& e) {
    throw Failure{kParse, path + ":" + std::to_string(e.pos().line) + ":" + std::to_string(e.pos().column) + ": " +
                              e.message()};
  }
}

Marking parse_marking(const std::string& text, const ecws::BlockTree& tree) {
  Marking m;
  try {
    m = Marking::parse(text);
  } catch (const std::exception& e) {
    throw Failure{kBadMarking, std::string("invalid marking: ") + e.what()};
  }
  auto places = ecws::place_labels(tree);
  for (const auto& p : m)
    if (std::find(places.begin(), places.end(), p) == places.end())
      throw Failure{kBadMarking, "invalid marking: '" + p + "' is not a place of the old net"};
  return m;
}

void print_table(std::ostream& out, const std::vector<compare::CompareRow>& rows) {
  out << std::left << std::setw(9) << "approach" << std::right << std::setw(8) << "total" << std::setw(9)
      << "correct" << std::setw(6) << "fn" << std::setw(6) << "fp" << std::setw(9) << "unknown" << std::setw(10)
      << "accuracy" << "\n";
  for (const auto& r : rows) {
    std::ostringstream acc;
    acc << std::fixed << std::setprecision(1) << 100.0 * r.accuracy() << "%";
    out << std::left << std::setw(9) << r.approach << std::right << std::setw(8) << r.total << std::setw(9)
        << r.correct << std::setw(6) << r.false_negatives << std::setw(6) << r.false_positives << std::setw(9)
        << r.unknowns << std::setw(10) << acc.str() << "\n";
  }
}

void print_pair(std::ostream& out, const gen::NetPair& p) {
  out << "  old: " << ecws::format(p.old_net) << "\n  new: " << ecws::format(p.new_net) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural change regions for workflow net migration", "migra"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json_out = false;
  std::size_t cap = wfnet::kDefaultStateCap;
  std::uint64_t seed = 1;
  app.add_flag("--json", json_out, "Machine-readable output");
  app.add_option("--cap", cap, "State-space limit for the oracle")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed of the random net generator");

  std::string old_file, new_file, marking;
  auto* analyze = app.add_subcommand("analyze", "Change regions of an (old, new) net pair");
  analyze->add_option("old", old_file)->required();
  analyze->add_option("new", new_file)->required();
  analyze->add_option("--marking", marking, "Decide migratability of one marking, e.g. \"p2,p4\"");

  auto* oracle = app.add_subcommand("oracle", "Ground truth from both state spaces");
  oracle->add_option("old", old_file)->required();
  oracle->add_option("new", new_file)->required();

  auto* cmp = app.add_subcommand("compare", "Score PSCR/SCR and the SESE baseline against the oracle");
  cmp->add_option("old", old_file)->required();
  cmp->add_option("new", new_file)->required();

  std::string file, what = "net", format = "dot", place;
  auto* exp = app.add_subcommand("export", "Net, C-tree or GCS as DOT or MGS text");
  exp->add_option("file", file)->required();
  exp->add_option("place", place, "Place for --what gcs");
  exp->add_option("--what", what)->check(CLI::IsMember({"net", "ctree", "gcs"}));
  exp->add_option("--format", format)->check(CLI::IsMember({"dot", "mgs"}));

  std::size_t count = 500;
  auto* fz = app.add_subcommand("fuzz", "");  // hidden
  fz->group("");
  fz->add_option("--count", count);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kParse;
  }

  try {
    if (analyze->parsed()) {
      auto o = load(old_file);
      auto n = load(new_file);
      auto report = regions::analyze(o, n);
      auto doc = report::to_json(report);
      if (analyze->count("--marking")) {
        auto m = parse_marking(marking, o);
        doc["marking"] = m.str();
        doc["decision"] = std::string(regions::to_string(regions::decide_marking(m, report)));
      }
      out << doc.dump(2) << "\n";
    } else if (oracle->parsed()) {
      auto o = load(old_file);
      auto n = load(new_file);
      auto truth = wfnet::oracle_classify(ecws::build_net(o), ecws::build_net(n), cap);
      out << report::to_json(truth, regions::analyze(o, n)).dump(2) << "\n";
    } else if (cmp->parsed()) {
      auto c = compare::run(load(old_file), load(new_file), cap);
      if (json_out) {
        report::json rows = report::json::array();
        for (const auto& r : c.rows) rows.push_back(report::to_json(r));
        report::json doc{{"rows", rows}, {"sese", report::to_json(c.sese)},
                         {"pscr_exists", c.analysis.pscr_exists}, {"scr", report::labels(c.analysis.scr)}};
        out << doc.dump(2) << "\n";
      } else {
        print_table(out, c.rows);
      }
    } else if (exp->parsed()) {
      auto t = load(file);
      if (what == "gcs" && place.empty()) throw Failure{kParse, "--what gcs needs a place"};
      if (what == "net" && format == "dot") {
        out << to_dot(ecws::build_net(t));
      } else {
        auto c = ctree::build_ctree(t);
        if (what == "gcs") {
          try {
            c = ctree::gcs(place, c);
          } catch (const UnknownPlaceError& e) {
            throw Failure{kBadMarking, e.what()};
          }
        }
        out << (format == "mgs" ? ctree::to_mgs(c) + "\n" : ctree::to_dot(c, what));
      }
    } else if (fz->parsed()) {
      auto s = check::fuzz(seed, count);
      bool ok = s.region_failures + s.lemma_failures + s.cover_failures + s.exact_failures + s.contradictions == 0;
      if (json_out) {
        report::json doc{{"seed", seed},
                         {"pairs", s.pairs},
                         {"region_failures", s.region_failures},
                         {"lemma_failures", s.lemma_failures},
                         {"cover_failures", s.cover_failures},
                         {"exact_failures", s.exact_failures},
                         {"contradictions", s.contradictions}};
        out << doc.dump(2) << "\n";
      } else {
        out << "seed " << seed << ": " << s.pairs << " pairs, " << s.region_failures << " region mismatches, "
            << s.lemma_failures << " embedding mismatches, " << s.cover_failures << " cover failures, "
            << s.exact_failures << " inexact trees, " << s.contradictions << " contradicted decisions\n";
        for (const auto& p : s.counterexamples) {
          out << "counterexample (" << check::check_pair(p.old_net, p.new_net).failures() << "):\n";
          print_pair(out, p);
        }
      }
      return ok ? kOk : kInternal;
    }
  } catch (const Failure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const StateExplosionError& e) {
    err << "error: " << e.what() << "\n";
    return kStateExplosion;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace migra::cli
