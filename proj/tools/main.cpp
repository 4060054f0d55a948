// ppn: command-line front end for the port calculus library.
//
// Exit status: 0 success, 1 a check failed, 2 usage error or resume
// mismatch, 3 budget exceeded.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppn/channels.hpp"
#include "ppn/constants.hpp"
#include "ppn/error.hpp"
#include "ppn/five_split.hpp"
#include "ppn/formats.hpp"
#include "ppn/pocklington.hpp"
#include "ppn/prefix_search.hpp"
#include "ppn/reproduction.hpp"
#include "ppn/sieve.hpp"

namespace {

using namespace ppn;

enum Exit : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3 };

struct Common {
  std::string format = "text";
  std::uint64_t seed = FactorBudget{}.seed;
  std::optional<double> budget;  // seconds

  bool json() const { return format == "json"; }

  FactorBudget factor_budget() const {
    FactorBudget b;
    b.seed = seed;
    if (budget) b.time_per_composite = std::chrono::milliseconds(static_cast<std::int64_t>(*budget * 1000));
    return b;
  }
};

void add_format(CLI::App* app, Common& common) {
  app->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

void add_factoring(CLI::App* app, Common& common) {
  app->add_option("--seed", common.seed, "Seed for the rho factoring restarts");
  app->add_option("--budget", common.budget, "Time budget in seconds");
}

struct PortArgs {
  std::string port;
  std::string R;
  std::string c;
};

void add_port(CLI::App* app, PortArgs& args) {
  app->add_option("--port", args.port, "H for the key port (113322,797), or R,c");
  app->add_option("--R", args.R, "Port modulus R");
  app->add_option("--c", args.c, "Port numerator c");
}

Port resolve_port(const PortArgs& args) {
  if (!args.port.empty()) {
    if (!args.R.empty() || !args.c.empty()) throw Error(Errc::InvalidArgument, "give either --port or --R/--c");
    if (args.port == "H") return known::key_port();
    const auto parts = parse_int_list(args.port);
    if (parts.size() != 2) throw Error(Errc::InvalidArgument, "--port expects H or R,c");
    return Port(parts[0], parts[1]);
  }
  if (args.R.empty() || args.c.empty()) throw Error(Errc::InvalidArgument, "a port is required (--port or --R and --c)");
  return Port(parse_int(args.R), parse_int(args.c));
}

PrimeFactorization primes_arg(const std::string& text) {
  return PrimeFactorization::from_primes(parse_int_list(text));
}

// A comma list of primes, or a single squarefree integer to factor.
PrimeFactorization squarefree_arg(const std::string& text, const FactorBudget& budget) {
  const auto values = parse_int_list(text);
  if (values.size() == 1 && !is_probable_prime(values[0])) return factor_squarefree(values[0], budget);
  return PrimeFactorization::from_primes(values);
}

using Json = nlohmann::ordered_json;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string port_json(const Port& p) { return dump(Json{{"R", to_string(p.R())}, {"c", to_string(p.c())}}); }

std::string hit_text(const TwoPrimeHit& h) {
  return "t=" + to_string(h.t) + " u=" + to_string(h.u) + " v=" + to_string(h.v);
}

std::vector<std::uint32_t> moduli_arg(const std::string& text) {
  if (text.empty()) return default_sieve_moduli();
  std::vector<std::uint32_t> out;
  for (const auto& v : parse_int_list(text)) {
    if (!v.fits_uint_p()) throw Error(Errc::InvalidArgument, "modulus too large: " + to_string(v));
    out.push_back(static_cast<std::uint32_t>(v.get_ui()));
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
    std::cerr << "wrote " << out_path << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Port calculus for primary pseudoperfect numbers"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  int status = kOk;
  std::function<int()> action;

  // verify-paper
  auto* verify = app.add_subcommand("verify-paper", "Run the reproduction checks");
  std::vector<std::string> only;
  std::string corrupt;
  verify->add_option("--only", only, "Check id or group (repeatable)");
  verify->add_option("--corrupt", corrupt, "Test mode: perturb the expected value of this check");
  add_format(verify, common);
  add_factoring(verify, common);
  verify->callback([&] {
    action = [&] {
      ReproductionOptions opt;
      opt.only = only;
      if (!corrupt.empty()) opt.corrupt = corrupt;
      opt.budget = common.factor_budget();
      const auto report = run_reproduction(opt);
      if (report.checks.empty()) throw Error(Errc::InvalidArgument, "no checks selected");
      std::cout << (common.json() ? to_json(report) : report.to_text());
      return report.ok() ? kOk : kCheckFailed;
    };
  });

  // port
  auto* port = app.add_subcommand("port", "Port calculus");
  port->require_subcommand(1);
  PortArgs port_args;
  std::string list_arg, q_arg, ambient_arg;

  auto* p_delta = port->add_subcommand("delta", "c*B - R*d(B)");
  add_port(p_delta, port_args);
  p_delta->add_option("--B", list_arg, "Primes of B, comma separated")->required();
  add_format(p_delta, common);
  p_delta->callback([&] {
    action = [&] {
      const auto d = to_string(delta(resolve_port(port_args), primes_arg(list_arg)));
      std::cout << (common.json() ? dump(Json{{"delta", d}}) : d + "\n");
      return kOk;
    };
  });

  auto* p_transition = port->add_subcommand("transition", "(R,c) -> (Rq, cq - R)");
  add_port(p_transition, port_args);
  p_transition->add_option("--q", q_arg, "Prime to append")->required();
  add_format(p_transition, common);
  p_transition->callback([&] {
    action = [&] {
      const Port next = transition(resolve_port(port_args), parse_int(q_arg));
      std::cout << (common.json() ? port_json(next) : next.to_string() + "\n");
      return kOk;
    };
  });

  auto* p_induced = port->add_subcommand("induced", "(RA, delta(A))");
  add_port(p_induced, port_args);
  p_induced->add_option("--A", list_arg, "Primes of A, comma separated")->required();
  add_format(p_induced, common);
  p_induced->callback([&] {
    action = [&] {
      const Port next = induced_port(resolve_port(port_args), primes_arg(list_arg));
      std::cout << (common.json() ? port_json(next) : next.to_string() + "\n");
      return kOk;
    };
  });

  auto* p_ambient = port->add_subcommand("ambient", "(R, R - d(R))");
  p_ambient->add_option("R", ambient_arg, "Primes of R (comma separated) or R itself")->required();
  add_format(p_ambient, common);
  p_ambient->callback([&] {
    action = [&] {
      const Port p = ambient_port(squarefree_arg(ambient_arg, common.factor_budget()));
      std::cout << (common.json() ? port_json(p) : p.to_string() + "\n");
      return kOk;
    };
  });

  auto* p_cong = port->add_subcommand("congruences", "Residues of B mod R and d(B) mod c");
  add_port(p_cong, port_args);
  add_format(p_cong, common);
  p_cong->callback([&] {
    action = [&] {
      const auto [b, d] = port_congruences(resolve_port(port_args));
      if (common.json())
        std::cout << dump(Json{{"B_mod_R", to_string(b)}, {"dB_mod_c", to_string(d)}});
      else
        std::cout << "B = " << to_string(b) << " (mod R)\nd(B) = " << to_string(d) << " (mod c)\n";
      return kOk;
    };
  });

  auto* p_audit = port->add_subcommand("audit", "Delta of every proper divisor of a filling");
  add_port(p_audit, port_args);
  p_audit->add_option("--B", list_arg, "Primes of B, comma separated")->required();
  add_format(p_audit, common);
  p_audit->callback([&] {
    action = [&] {
      const auto report = port_primitive_audit(resolve_port(port_args), primes_arg(list_arg));
      std::cout << (common.json() ? to_json(report) : report.table());
      return kOk;
    };
  });

  // search
  auto* search = app.add_subcommand("search", "Two-prime completion, sieve and prefix search");
  search->require_subcommand(1);
  PortArgs search_port;
  std::string m_arg, prefix_arg, moduli_text, out_path, in_path;
  std::string t_lo = "0", t_hi;
  bool beyond = false;

  auto* s_two = search->add_subcommand("two-prime", "Scan D(t) for square values");
  add_port(s_two, search_port);
  s_two->add_option("--m", m_arg, "Floor prime")->required();
  s_two->add_option("--t-lo", t_lo, "First t");
  s_two->add_option("--t-hi", t_hi, "Last t (default T)");
  s_two->add_flag("--beyond-bound", beyond, "Allow t above T");
  add_format(s_two, common);
  s_two->callback([&] {
    action = [&] {
      const auto problem = build_discriminant_problem(resolve_port(search_port), parse_int(m_arg));
      ScanStats stats;
      if (!problem.empty() || !t_hi.empty()) {
        const Int hi = t_hi.empty() ? problem.T : parse_int(t_hi);
        stats = scan_last_two_stats(problem, parse_int(t_lo), hi, beyond);
      }
      if (common.json()) {
        Json hits = Json::array();
        for (const auto& h : stats.hits) hits.push_back({{"t", to_string(h.t)}, {"u", to_string(h.u)}, {"v", to_string(h.v)}});
        std::cout << dump(Json{{"P0", to_string(problem.P0)},
                               {"S0", to_string(problem.S0)},
                               {"U", to_string(problem.U)},
                               {"T", to_string(problem.T)},
                               {"t_checked", std::to_string(stats.t_checked)},
                               {"square_hits", std::to_string(stats.squares)},
                               {"hits", hits}});
        return kOk;
      }
      std::cout << "P0=" << to_string(problem.P0) << " S0=" << to_string(problem.S0) << " U=" << to_string(problem.U)
                << " T=" << to_string(problem.T) << '\n';
      if (problem.empty() && t_hi.empty()) {
        std::cout << "empty interval\n";
        return kOk;
      }
      for (const auto& h : stats.hits) std::cout << hit_text(h) << '\n';
      std::cout << stats.t_checked << " t checked, " << stats.squares << " square discriminants, " << stats.hits.size()
                << " prime pairs\n";
      return kOk;
    };
  });

  auto* s_sieve = search->add_subcommand("sieve", "Build an exclusion certificate");
  add_port(s_sieve, search_port);
  s_sieve->add_option("--prefix", prefix_arg, "Prefix primes, comma separated");
  s_sieve->add_option("--m", m_arg, "Floor prime (default: last prefix prime)");
  s_sieve->add_option("--moduli", moduli_text, "Sieve primes (default: primes up to 97)");
  s_sieve->add_option("--out", out_path, "Write the certificate to this file");
  s_sieve->callback([&] {
    action = [&] {
      const auto prefix = prefix_arg.empty() ? std::vector<Int>{} : parse_int_list(prefix_arg);
      std::optional<Int> m;
      if (!m_arg.empty()) m = parse_int(m_arg);
      if (prefix.empty() && !m) throw Error(Errc::InvalidArgument, "--m is required without a prefix");
      const auto cert = build_exclusion_certificate(resolve_port(search_port), prefix, m, moduli_arg(moduli_text));
      if (!cert) {
        std::cerr << "not excluded: some t survives every modulus\n";
        return kCheckFailed;
      }
      emit(to_json(*cert), out_path);
      return kOk;
    };
  });

  auto* s_verify = search->add_subcommand("verify-sieve", "Check an exclusion certificate");
  s_verify->add_option("file", in_path, "Certificate file")->required();
  s_verify->callback([&] {
    action = [&] {
      const auto check = verify_exclusion_certificate(parse_exclusion_certificate(read_text_file(in_path)));
      std::cout << (check.valid ? "valid" : "invalid: " + check.reason) << '\n';
      return check.valid ? kOk : kCheckFailed;
    };
  });

  auto* s_prefixes = search->add_subcommand("prefixes", "Enumerate prefixes and scan their completions");
  add_port(s_prefixes, search_port);
  std::size_t k = 6;
  std::optional<std::size_t> depth;
  unsigned workers = 1;
  std::string t_cap = "1000", floor_arg, q1_min, q1_max, snapshot_path, resume_path;
  bool sieve_over_cap = false;
  s_prefixes->add_option("--k", k, "Number of primes in the filling");
  s_prefixes->add_option("--depth", depth, "List prefixes of this length instead of searching");
  s_prefixes->add_option("--floor", floor_arg, "Primes must exceed this (default: largest prime of R)");
  s_prefixes->add_option("--q1-min", q1_min, "Smallest first prime");
  s_prefixes->add_option("--q1-max", q1_max, "Largest first prime");
  s_prefixes->add_option("--workers", workers, "Worker threads");
  s_prefixes->add_option("--t-cap", t_cap, "Largest T scanned per prefix");
  s_prefixes->add_flag("--sieve-over-cap", sieve_over_cap, "Try the sieve on prefixes with T above the cap");
  s_prefixes->add_option("--snapshot", snapshot_path, "Checkpoint file");
  s_prefixes->add_option("--resume", resume_path, "Resume from this snapshot");
  s_prefixes->add_option("--budget", common.budget, "Time budget in seconds");
  add_format(s_prefixes, common);
  s_prefixes->callback([&] {
    action = [&]() -> int {
      PrefixSearchConfig config{resolve_port(search_port)};
      config.k = k;
      config.depth = depth;
      config.t_cap = parse_int(t_cap);
      if (config.t_cap < 0) throw Error(Errc::InvalidArgument, "--t-cap must be nonnegative");
      if (!floor_arg.empty()) config.floor_prime = parse_int(floor_arg);
      if (!q1_min.empty()) config.q1_min = parse_int(q1_min);
      if (!q1_max.empty()) config.q1_max = parse_int(q1_max);
      config.sieve_over_cap = sieve_over_cap;

      if (depth && *depth + 2 != k) {
        std::size_t count = 0;
        PruneCounters pruned;
        enumerate_prefixes(
            config,
            [&](const PrefixNode& node) {
              ++count;
              std::cout << join(node.prefix, ",") << '\n';
              return true;
            },
            &pruned);
        std::cout << count << " prefixes of length " << *depth << '\n';
        return kOk;
      }

      RunOptions opt;
      opt.workers = workers;
      if (common.budget) opt.budget = std::chrono::milliseconds(static_cast<std::int64_t>(*common.budget * 1000));
      if (!snapshot_path.empty()) opt.snapshot_path = snapshot_path;
      std::optional<SearchSnapshot> resume;
      if (!resume_path.empty()) {
        resume = read_snapshot_file(resume_path);
        opt.resume = &*resume;
      }
      const auto outcome = run_prefix_search(config, opt);
      if (common.json()) {
        std::cout << to_json(outcome.snapshot);
      } else {
        std::uint64_t seen = 0, empty = 0, bounded = 0, over = 0, sieved = 0, checked = 0, squares = 0, done = 0;
        for (const auto& b : outcome.snapshot.branches) {
          seen += b.prefixes_seen;
          empty += b.empty_T;
          bounded += b.bounded_T;
          over += b.over_cap;
          sieved += b.sieve_excluded;
          checked += b.t_checked;
          squares += b.square_hits;
          done += b.complete ? 1 : 0;
          for (const auto& f : b.fillings) std::cout << "filling: " << join(f.prefix, ",") << " " << hit_text(f.hit) << '\n';
        }
        std::cout << "branches " << done << "/" << outcome.snapshot.branches.size() << " complete\n"
                  << "prefixes " << seen << ", T<0 " << empty << ", 0<=T<=cap " << bounded << ", T>cap " << over
                  << ", sieved " << sieved << "\n"
                  << "t checked " << checked << ", square hits " << squares << '\n';
      }
      return outcome.finished ? kOk : kBudget;
    };
  });

  auto* s_audit = search->add_subcommand("audit-h6", "Channels through the known fillings of H");
  add_format(s_audit, common);
  add_factoring(s_audit, common);
  s_audit->callback([&] {
    action = [&] {
      const auto audit = h6_channel_audit(common.factor_budget());
      std::cout << (common.json() ? to_json(audit) : to_text(audit));
      return kOk;
    };
  });

  // certify / check-cert
  std::string p_arg;
  auto* certify = app.add_subcommand("certify", "Build a Pocklington certificate tree");
  certify->add_option("p", p_arg, "Prime to certify")->required();
  certify->add_option("--out", out_path, "Write the certificate to this file");
  add_factoring(certify, common);
  certify->callback([&] {
    action = [&] {
      const auto cert = certify_prime(parse_int(p_arg), common.factor_budget());
      emit(to_json(cert), out_path);
      const auto report = pocklington_verify(cert);
      std::cerr << "base " << to_string(cert.base) << ", " << verdict_name(report.verdict) << '\n';
      return report.ok() ? kOk : kCheckFailed;
    };
  });

  auto* check_cert = app.add_subcommand("check-cert", "Verify a Pocklington certificate file");
  check_cert->add_option("file", in_path, "Certificate file")->required();
  add_format(check_cert, common);
  check_cert->callback([&] {
    action = [&] {
      const auto report = pocklington_verify(parse_pocklington_certificate(read_text_file(in_path)));
      if (common.json()) {
        std::cout << to_json(report);
      } else {
        std::cout << report.table();
        std::cout << verdict_name(report.verdict);
        if (!report.failure.empty()) std::cout << ": " << report.failure;
        std::cout << '\n';
      }
      return report.ok() ? kOk : kCheckFailed;
    };
  });

  // utilities
  std::string n_arg;
  auto* factor = app.add_subcommand("factor", "Factor an integer");
  factor->add_option("n", n_arg, "Integer")->required();
  add_factoring(factor, common);
  factor->callback([&] {
    action = [&] {
      const auto f = factorize(parse_int(n_arg), common.factor_budget());
      std::cout << f.to_string() << '\n';
      if (!f.complete) {
        std::cerr << "incomplete within budget\n";
        return kBudget;
      }
      return kOk;
    };
  });

  auto* ppn_cmd = app.add_subcommand("is-ppn", "Test 1/n + sum 1/p = 1");
  ppn_cmd->add_option("n", n_arg, "Integer or comma separated primes")->required();
  add_factoring(ppn_cmd, common);
  ppn_cmd->callback([&] {
    action = [&] {
      const auto f = squarefree_arg(n_arg, common.factor_budget());
      const bool yes = is_ppn(f);
      std::cout << f.to_string() << (yes ? " is" : " is not") << " a primary pseudoperfect number\n";
      return yes ? kOk : kCheckFailed;
    };
  });

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
    status = action ? action() : kUsage;
  } catch (const Error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << '\n';
    switch (e.code()) {
      case Errc::BudgetExceeded:
      case Errc::FactorizationIncomplete:
        return kBudget;
      case Errc::CertificationFailed:
      case Errc::NotPPN:
      case Errc::NotAFilling:
        return kCheckFailed;
      default:
        return kUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return status;
}
