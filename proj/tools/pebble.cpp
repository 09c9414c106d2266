#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pebbling/pebbling.hpp"
#include "repro.hpp"

namespace {

using namespace pebbling;

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kResource = 3 };

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

template <class Int>
std::vector<Int> parse_list(const std::string& text) {
  std::vector<Int> out;
  for (auto& item : split(text, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw InvalidParameter("not an integer: " + item);
    }
    if (used != item.size()) throw InvalidParameter("not an integer: " + item);
    out.push_back(static_cast<Int>(v));
  }
  return out;
}

template <class Fn>
auto with_input(const std::string& path, Fn&& fn) {
  if (path == "-") return fn(std::cin);
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open " + path);
  return fn(in);
}

struct GraphInput {
  std::string file;
  std::string family;

  void add(CLI::App* app, const std::string& suffix = "") {
    app->add_option("--graph" + suffix, file, "graph file (\"n m\" then m lines \"u v\"), - for stdin");
    app->add_option("--family" + suffix, family, "family spec such as cycle:7 or grid:2,3");
  }

  Graph load() const {
    if (file.empty() == family.empty()) throw InvalidParameter("give exactly one of --graph and --family");
    if (!family.empty()) return generate(parse_family(family));
    return with_input(file, [](std::istream& in) { return read_graph(in); });
  }
};

SolveMode parse_mode(const std::string& s) {
  if (s == "unrestricted") return SolveMode::Unrestricted;
  if (s == "greedy") return SolveMode::Greedy;
  if (s == "semi-greedy") return SolveMode::SemiGreedy;
  if (s == "tree") return SolveMode::TreeSolvable;
  throw InvalidParameter("unknown mode " + s);
}

void print_moves(const MoveSequence& moves) {
  for (auto& m : moves) std::cout << "  " << m.from << " -> " << m.to << " (cost " << m.cost << ")\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot write " + path);
  out << text;
}

void add_solve(CLI::App& app, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("solve", "decide whether a distribution reaches a root");
  auto graph = std::make_shared<GraphInput>();
  auto dist = std::make_shared<std::string>();
  auto dist_file = std::make_shared<std::string>();
  auto root = std::make_shared<std::string>("0");
  auto k = std::make_shared<int>(1);
  auto p = std::make_shared<int>(2);
  auto mode = std::make_shared<std::string>("unrestricted");
  graph->add(cmd);
  cmd->add_option("--dist", *dist, "comma-separated pebble counts");
  cmd->add_option("--dist-file", *dist_file, "whitespace-separated pebble counts, - for stdin");
  cmd->add_option("--root", *root, "root vertex or \"all\"")->capture_default_str();
  cmd->add_option("--k", *k, "pebbles required on the root")->capture_default_str();
  cmd->add_option("--p", *p, "pebbles removed per step")->capture_default_str();
  cmd->add_option("--mode", *mode, "unrestricted, greedy, semi-greedy or tree")->capture_default_str();
  cmd->callback([=, &action] {
    action = [=] {
      Graph g = graph->load();
      if (dist->empty() == dist_file->empty()) throw InvalidParameter("give exactly one of --dist and --dist-file");
      Distribution d = dist->empty()
                           ? with_input(*dist_file, [&](std::istream& in) { return read_distribution(in, g.order()); })
                           : Distribution(parse_list<int>(*dist));
      if (d.vertices() != g.order()) throw InvalidParameter("distribution length does not match the graph");
      SolveOptions opt;
      opt.k = *k;
      opt.costs = Costs::uniform(*p);
      opt.mode = parse_mode(*mode);
      if (*root == "all") {
        auto res = solvable_all_roots(g, d, opt);
        if (res.solvable)
          std::cout << "SOLVABLE (every root)\n";
        else
          std::cout << "UNSOLVABLE (" << to_string(opt.mode) << ", root " << *res.failing_root << ")\n";
        return int{kOk};
      }
      auto res = solvable(g, d, parse_list<int>(*root).at(0), opt);
      if (res.solvable) {
        std::cout << "SOLVABLE (" << to_string(opt.mode) << ")\n";
        print_moves(*res.witness);
      } else {
        std::cout << "UNSOLVABLE (" << to_string(opt.mode) << ")\n";
      }
      return int{kOk};
    };
  });
}

void add_number(CLI::App& app, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("number", "exact pebbling number f(G) or f(G, r; k)");
  auto graph = std::make_shared<GraphInput>();
  auto root = std::make_shared<std::optional<int>>();
  auto k = std::make_shared<int>(1);
  auto p = std::make_shared<int>(2);
  auto jobs = std::make_shared<int>(1);
  auto budget = std::make_shared<std::uint64_t>(0);
  auto witness = std::make_shared<bool>(false);
  graph->add(cmd);
  cmd->add_option("--root", *root, "compute f(G, r; k) for this root");
  cmd->add_option("--k", *k, "pebbles required on the root")->capture_default_str();
  cmd->add_option("--p", *p, "pebbles removed per step")->capture_default_str();
  cmd->add_option("--jobs", *jobs, "worker threads")->capture_default_str();
  cmd->add_option("--budget", *budget, "node expansions per root, 0 for unlimited")->capture_default_str();
  cmd->add_flag("--witness", *witness, "also print a largest unsolvable distribution");
  cmd->callback([=, &action] {
    action = [=] {
      NumberOptions opt;
      opt.root = *root;
      opt.k = *k;
      opt.costs = Costs::uniform(*p);
      opt.jobs = *jobs;
      opt.budget = *budget;
      auto res = pebbling_number_ex(graph->load(), opt);
      std::cout << res.value << '\n';
      if (*witness) std::cout << "unsolvable at root " << res.witness_root << ": " << res.witness.to_string() << '\n';
      return int{kOk};
    };
  });
}

void add_family(CLI::App& app, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("family", "closed-form pebbling number of a named family");
  auto spec = std::make_shared<std::string>();
  auto costs = std::make_shared<std::string>();
  auto exact = std::make_shared<bool>(false);
  cmd->add_option("spec", *spec, "family spec such as cycle:7")->required();
  cmd->add_option("--p", *costs, "per-dimension step costs for grids, e.g. 3,3");
  cmd->add_flag("--exact", *exact, "also run the exact solver");
  cmd->callback([=, &action] {
    action = [=] {
      auto s = parse_family(*spec);
      std::optional<std::vector<int>> ps;
      if (!costs->empty()) ps = parse_list<int>(*costs);
      auto f = formula(s, ps);
      if (f)
        std::cout << *f << '\n';
      else
        std::cout << "unknown\n";
      if (*exact) {
        Graph g = generate(s);
        NumberOptions opt;
        if (ps) opt.costs = grid_costs(s.params, *ps);
        std::cout << "exact " << pebbling_number_ex(g, opt).value << '\n';
      }
      return int{kOk};
    };
  });
}

void add_properties(CLI::App& app, std::function<int()>& action) {
  {
    auto* cmd = app.add_subcommand("two-pebbling", "decide the 2-pebbling property");
    auto graph = std::make_shared<GraphInput>();
    auto jobs = std::make_shared<int>(1);
    graph->add(cmd);
    cmd->add_option("--jobs", *jobs, "worker threads")->capture_default_str();
    cmd->callback([=, &action] {
      action = [=] {
        auto rep = two_pebbling(graph->load(), *jobs);
        std::cout << "f = " << *rep.pebbling_number << '\n';
        if (rep.holds) {
          std::cout << "2-pebbling property holds\n";
          return int{kOk};
        }
        std::cout << "2-pebbling property fails at root " << *rep.root << ": " << rep.witness->to_string() << '\n';
        return int{kViolation};
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("class0", "decide whether f(G) = n(G)");
    auto graph = std::make_shared<GraphInput>();
    auto jobs = std::make_shared<int>(1);
    graph->add(cmd);
    cmd->add_option("--jobs", *jobs, "worker threads")->capture_default_str();
    cmd->callback([=, &action] {
      action = [=] {
        Graph g = graph->load();
        auto rep = class0(g, *jobs);
        std::cout << (rep.holds ? "Class 0" : "Class 1") << " (" << to_string(rep.method) << ")\n";
        if (rep.pebbling_number) std::cout << "f = " << *rep.pebbling_number << ", n = " << g.order() << '\n';
        if (rep.witness) std::cout << "unsolvable at root " << *rep.root << ": " << rep.witness->to_string() << '\n';
        return int{rep.holds ? kOk : kViolation};
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("graham", "compare f(G1 x G2) with f(G1) f(G2)");
    auto g1 = std::make_shared<GraphInput>();
    auto g2 = std::make_shared<GraphInput>();
    auto p1 = std::make_shared<int>(2);
    auto p2 = std::make_shared<int>(2);
    auto jobs = std::make_shared<int>(1);
    g1->add(cmd, "1");
    g2->add(cmd, "2");
    cmd->add_option("--p1", *p1, "step cost along G1 edges")->capture_default_str();
    cmd->add_option("--p2", *p2, "step cost along G2 edges")->capture_default_str();
    cmd->add_option("--jobs", *jobs, "worker threads")->capture_default_str();
    cmd->callback([=, &action] {
      action = [=] {
        auto rep = graham_check(g1->load(), g2->load(), *p1, *p2, *jobs);
        std::cout << rep.lhs << (rep.holds ? " <= " : " > ") << rep.rhs << '\n';
        return int{rep.holds ? kOk : kViolation};
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("genprod", "compare f(H) with f(G1) + f(G2) for G1, G2 joined by cross edges");
    auto g1 = std::make_shared<GraphInput>();
    auto g2 = std::make_shared<GraphInput>();
    auto cross = std::make_shared<std::string>();
    auto jobs = std::make_shared<int>(1);
    g1->add(cmd, "1");
    g2->add(cmd, "2");
    cmd->add_option("--cross", *cross, "cross edges as a-b pairs, e.g. 0-0,1-2")->required();
    cmd->add_option("--jobs", *jobs, "worker threads")->capture_default_str();
    cmd->callback([=, &action] {
      action = [=] {
        std::vector<std::pair<Vertex, Vertex>> f;
        for (auto& item : split(*cross, ',')) {
          auto ends = parse_list<int>(item.substr(0, item.find('-')) + "," + item.substr(item.find('-') + 1));
          if (ends.size() != 2) throw InvalidParameter("bad cross edge " + item);
          f.push_back({ends[0], ends[1]});
        }
        auto rep = genprod_check(g1->load(), g2->load(), f, *jobs);
        std::cout << "f(H) = " << rep.f_h << ", f(G1) + f(G2) = " << rep.bound << '\n';
        std::cout << "premises " << (rep.premises ? "hold" : "do not hold") << '\n';
        if (rep.twopp) std::cout << "H " << (*rep.twopp ? "has" : "lacks") << " the 2-pebbling property\n";
        return int{rep.holds || !rep.premises ? kOk : kViolation};
      };
    });
  }
}

void add_threshold(CLI::App& app, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("threshold", "Monte Carlo pebbling threshold scan");
  auto family = std::make_shared<std::string>("complete");
  auto ns = std::make_shared<std::string>("16,64,256,1024");
  auto t = std::make_shared<std::optional<std::int64_t>>();
  auto trials = std::make_shared<std::int64_t>(2000);
  auto seed = std::make_shared<std::uint64_t>(42);
  auto jobs = std::make_shared<int>(1);
  auto target = std::make_shared<double>(0.5);
  auto out = std::make_shared<std::string>();
  auto curve = std::make_shared<std::string>();
  cmd->add_option("--family", *family, "family name (complete, star, path, wheel, ...)")->capture_default_str();
  cmd->add_option("--n", *ns, "comma-separated vertex counts")->capture_default_str();
  cmd->add_option("--t", *t, "estimate at this pebble count instead of scanning");
  cmd->add_option("--trials", *trials, "trials per probe")->capture_default_str();
  cmd->add_option("--seed", *seed, "random seed")->capture_default_str();
  cmd->add_option("--jobs", *jobs, "worker threads")->capture_default_str();
  cmd->add_option("--target", *target, "solvability probability to locate")->capture_default_str();
  cmd->add_option("--out", *out, "write the n,t_half CSV (or curve rows with --t) here");
  cmd->add_option("--curve", *curve, "write every probe of the scan as curve CSV here");
  cmd->callback([=, &action] {
    action = [=] {
      TrialConfig cfg;
      cfg.trials = *trials;
      cfg.seed = *seed;
      cfg.jobs = *jobs;
      auto fam = parse_family(*family + ":1").name;
      auto sizes = parse_list<std::int64_t>(*ns);
      if (*t) {
        std::vector<CurveRow> rows;
        for (auto n : sizes) {
          auto pred = family_predicate(fam);
          if (pred) {
            rows.push_back(estimate(n, **t, cfg, pred));
          } else {
            rows.push_back(estimate(generate(FamilySpec{fam, {static_cast<int>(n)}}), **t, cfg));
            rows.back().n = n;
          }
        }
        std::ostringstream csv;
        write_curve_csv(csv, rows);
        std::cout << csv.str();
        if (!out->empty()) write_file(*out, csv.str());
        return int{kOk};
      }
      auto res = threshold_scan(fam, sizes, cfg, *target);
      std::ostringstream csv;
      write_scan_csv(csv, res.points);
      std::cout << csv.str();
      if (res.points.size() >= 2) std::cout << "exponent " << res.exponent << '\n';
      for (auto& p : res.points)
        if (p.noisy) std::cout << "warning: non-monotone probes near n = " << p.n << '\n';
      if (!out->empty()) write_file(*out, csv.str());
      if (!curve->empty()) {
        std::ostringstream c;
        write_curve_csv(c, res.rows);
        write_file(*curve, c.str());
      }
      return int{kOk};
    };
  });
}

void add_lemke(CLI::App& app, std::function<int()>& action) {
  auto* group = app.add_subcommand("lemke", "zero-sum subsets by numerical pebbling");
  group->require_subcommand(1);
  auto* cmd = group->add_subcommand("solve", "find I with q | sum and gcd-sum <= q");
  auto q = std::make_shared<std::int64_t>(0);
  auto xs = std::make_shared<std::string>();
  auto certificate = std::make_shared<bool>(false);
  cmd->add_option("--q", *q, "modulus")->required();
  cmd->add_option("--xs", *xs, "q comma-separated positive integers")->required();
  cmd->add_flag("--certificate", *certificate, "print every pebbling operation");
  cmd->callback([=, &action] {
    action = [=] {
      auto values = parse_list<std::int64_t>(*xs);
      auto sol = lemke::solve(values, *q, true);
      std::cout << "I = {";
      for (std::size_t i = 0; i < sol.indices.size(); ++i) std::cout << (i ? "," : "") << sol.indices[i] + 1;
      std::cout << "}\n";
      std::cout << "sum = " << sol.sum << ", " << *q << " | sum\n";
      std::cout << "gcd-sum = " << sol.gcd_sum << " <= " << *q << '\n';
      if (*certificate) {
        if (sol.used_search) std::cout << "schedule: greedy search (sweep stalled)\n";
        for (auto& st : sol.certificate) std::cout << lemke::format_step(st) << '\n';
      }
      return int{kOk};
    };
  });
}

void add_lattice(CLI::App& app, std::function<int()>& action) {
  using namespace pebbling::lattice;
  auto* group = app.add_subcommand("lattice", "bounded multiset lattice tools");
  group->require_subcommand(1);
  {
    auto* cmd = group->add_subcommand("shadow", "shadow of a family given by colex ranks");
    auto w = std::make_shared<int>(0);
    auto b = std::make_shared<int>(1);
    auto family = std::make_shared<std::string>();
    cmd->add_option("--w", *w, "weight")->required();
    cmd->add_option("--b", *b, "multiplicity bound")->required();
    cmd->add_option("--family", *family, "comma-separated 0-based colex ranks, or a file with one rank per line")->required();
    cmd->callback([=, &action] {
      action = [=] {
        std::vector<std::int64_t> ranks;
        if (std::filesystem::exists(*family)) {
          with_input(*family, [&](std::istream& in) {
            std::int64_t r;
            while (in >> r) ranks.push_back(r);
            return 0;
          });
        } else {
          ranks = parse_list<std::int64_t>(*family);
        }
        auto f = family_from_ranks(ranks, *w, *b);
        auto sh = shadow(f);
        std::cout << "family:";
        for (auto& m : f.members()) std::cout << ' ' << m.to_string();
        std::cout << "\nshadow:";
        for (auto& m : sh.members()) std::cout << ' ' << m.to_string();
        auto rep = cl_check(f);
        std::cout << "\nshad = " << rep.shad_actual << ", colex bound = " << rep.shad_bound << '\n';
        return int{rep.holds ? kOk : kViolation};
      };
    });
  }
  {
    auto* cmd = group->add_subcommand("supernormal", "p(F)^(b-1) - p(Shad F)^b for the colex family");
    auto n = std::make_shared<int>(0);
    auto b = std::make_shared<int>(0);
    auto s = std::make_shared<int>(0);
    auto sweep = std::make_shared<int>(0);
    cmd->add_option("--n", *n, "symbols")->required();
    cmd->add_option("--b", *b, "multiplicity bound")->required();
    cmd->add_option("--s", *s, "position of the b-fold element")->required();
    cmd->add_option("--sweep", *sweep, "also print the gap for every n up to this value");
    cmd->callback([=, &action] {
      action = [=] {
        auto gap = supernormal_gap(*n, *b, *s);
        std::cout << "gap = " << gap << " (" << static_cast<double>(gap) << ")\n";
        std::cout << "explicit = " << supernormal_gap_explicit(*n, *b, *s) << '\n';
        for (int m = *s + 1; m <= *sweep; ++m)
          std::cout << "n = " << m << ": " << static_cast<double>(supernormal_gap(m, *b, *s)) << '\n';
        return int{kOk};
      };
    });
  }
  {
    auto* cmd = group->add_subcommand("genlov", "test the real-x shadow bound on every colex segment");
    auto w = std::make_shared<int>(0);
    auto b = std::make_shared<int>(0);
    auto nmax = std::make_shared<int>(0);
    cmd->add_option("--w", *w, "largest weight")->required();
    cmd->add_option("--b", *b, "multiplicity bound (at least 2)")->required();
    cmd->add_option("--nmax", *nmax, "symbols")->required();
    cmd->callback([=, &action] {
      action = [=] {
        auto res = genlov_segments(*w, *b, *nmax);
        std::cout << "checked " << res.checked << " segments, " << res.failures.size() << " violations\n";
        for (auto [ww, f] : res.failures) {
          auto rep = genlov_check(first_f(f, ww, *b));
          std::cout << "COUNTEREXAMPLE w=" << ww << " |F|=" << f << " x=" << static_cast<double>(rep.x)
                    << " bound=" << static_cast<double>(rep.bound) << " shad=" << rep.shad
                    << (rep.in_domain ? "" : " (x below w/(b+1)+1)") << '\n';
        }
        return int{res.failures.empty() ? kOk : kViolation};
      };
    });
  }
  {
    auto* cmd = group->add_subcommand("count", "bin, mul, bmul or col");
    auto kind = std::make_shared<std::string>();
    auto n = std::make_shared<std::int64_t>(0);
    auto w = std::make_shared<std::int64_t>(0);
    auto b = std::make_shared<int>(1);
    auto v = std::make_shared<std::string>();
    cmd->add_option("kind", *kind, "bin, mul, bmul or col")->required();
    cmd->add_option("--n", *n, "symbols");
    cmd->add_option("--w", *w, "weight");
    cmd->add_option("--b", *b, "multiplicity bound");
    cmd->add_option("--v", *v, "multiplicity vector for col, e.g. 0,0,2");
    cmd->callback([=, &action] {
      action = [=] {
        if (*kind == "bin")
          std::cout << bin(*n, *w) << '\n';
        else if (*kind == "mul")
          std::cout << mul(*n, *w) << '\n';
        else if (*kind == "bmul")
          std::cout << bmul(*n, *w, *b) << '\n';
        else if (*kind == "col")
          std::cout << col(parse_list<int>(*v), *b) << '\n';
        else
          throw InvalidParameter("unknown count " + *kind);
        return int{kOk};
      };
    });
  }
  {
    auto* cmd = group->add_subcommand("normal", "normalized matching between two levels");
    auto n = std::make_shared<int>(0);
    auto b = std::make_shared<int>(0);
    auto u = std::make_shared<int>(0);
    auto w = std::make_shared<int>(0);
    cmd->add_option("--n", *n, "symbols")->required();
    cmd->add_option("--b", *b, "multiplicity bound")->required();
    cmd->add_option("--u", *u, "lower level")->required();
    cmd->add_option("--w", *w, "upper level")->required();
    cmd->callback([=, &action] {
      action = [=] {
        bool ok = normal_check(*n, *b, *u, *w);
        std::cout << (ok ? "normal" : "not normal") << '\n';
        return int{ok ? kOk : kViolation};
      };
    });
  }
}

void add_repro(CLI::App& app, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("repro", "run every acceptance check and print a pass/fail table");
  auto opt = std::make_shared<repro::Options>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--seed", opt->seed, "random seed")->capture_default_str();
  cmd->add_option("--jobs", opt->jobs, "worker threads")->capture_default_str();
  cmd->add_flag("--heavy", opt->heavy, "include the full path x star verification");
  cmd->add_option("--out", *out, "directory for the CSV artifacts");
  cmd->callback([=, &action] {
    action = [=] {
      repro::Artifacts csv;
      bool all = true;
      repro::run(*opt, csv, [&](const repro::Outcome& o) {
        all = all && o.pass;
        std::cout << repro::format(o) << std::endl;
      });
      if (!out->empty()) {
        std::filesystem::create_directories(*out);
        for (auto& [name, text] : csv) write_file((std::filesystem::path(*out) / name).string(), text);
      }
      return int{all ? kOk : kViolation};
    };
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph pebbling toolkit"};
  app.require_subcommand(1);
  std::function<int()> action;
  add_solve(app, action);
  add_number(app, action);
  add_family(app, action);
  add_properties(app, action);
  add_threshold(app, action);
  add_lemke(app, action);
  add_lattice(app, action);
  add_repro(app, action);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action();
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what();
    if (e.hi() > 0) std::cerr << " (value lies in [" << e.lo() << ", " << e.hi() << "])";
    std::cerr << '\n';
    return kResource;
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionViolated& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}
