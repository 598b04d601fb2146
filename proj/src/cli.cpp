#include "tincalc/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "tincalc/cliques.hpp"
#include "tincalc/errors.hpp"
#include "tincalc/fastinner.hpp"
#include "tincalc/generate.hpp"
#include "tincalc/integrate.hpp"
#include "tincalc/match.hpp"
#include "tincalc/ops.hpp"
#include "tincalc/tin_io.hpp"

namespace tincalc {

namespace {

struct Common {
  std::string f_path, g_path;
  std::string method = "both";
  std::size_t primes = 0;
  unsigned prime_bits = 62;
  bool count_ops = false;
  std::string form = "difference";
  std::size_t cutover = FastOptions{}.direct_cutover;

  FastOptions fast_options() const {
    FastOptions o;
    o.primes = primes;
    o.prime_bits = prime_bits;
    o.direct_cutover = cutover;
    if (form == "difference")
      o.form = GridForm::Difference9;
    else if (form == "literal")
      o.form = GridForm::Literal36;
    else
      throw InvalidParameter("unknown form '" + form + "'");
    return o;
  }

  std::vector<Method> methods() const {
    if (method == "both") return {Method::Naive, Method::Fast};
    return {parse_method(method)};
  }
};

const char* method_name(Method m) { return m == Method::Naive ? "naive" : "fast"; }

void add_pair_options(CLI::App* cmd, Common& c, bool with_method) {
  cmd->add_option("f", c.f_path, "first terrain")->required();
  cmd->add_option("g", c.g_path, "second terrain")->required();
  if (!with_method) return;
  cmd->add_option("--method", c.method, "naive, fast or both")->check(CLI::IsMember({"naive", "fast", "both"}));
  cmd->add_option("--primes", c.primes, "initial number of primes (0: estimate)");
  cmd->add_option("--prime-bits", c.prime_bits, "prime size in bits")->check(CLI::Range(24, 62));
  cmd->add_flag("--count-ops", c.count_ops, "report field-operation counts");
  cmd->add_option("--form", c.form, "difference or literal")->check(CLI::IsMember({"difference", "literal"}));
  cmd->add_option("--cutover", c.cutover, "largest clique side summed pair by pair");
}

struct LoadedPair {
  Tin f, g;
};

// Loads and validates; returns false (after reporting) when invalid.
bool load_pair(const Common& c, LoadedPair& pair, std::ostream& err) {
  pair.f = read_tin_file(c.f_path);
  pair.g = read_tin_file(c.g_path);
  const Report r = validate_pair(pair.f, pair.g);
  if (r.ok()) return true;
  for (const auto& v : r.violations) err << "violation: " << to_string(v.kind) << ": " << v.detail << "\n";
  return false;
}

std::string exact_and_decimal(const Scalar& v) { return to_string(v) + " " + to_decimal(v); }

int cmd_inner(const Common& c, std::ostream& out, std::ostream& err) {
  LoadedPair p;
  if (!load_pair(c, p, err)) return kExitInvalid;
  std::vector<Scalar> values;
  for (Method m : c.methods()) {
    if (m == Method::Naive) {
      const ops::Scope scope;
      values.push_back(naive_inner_product(p.f, p.g));
      out << "naive " << exact_and_decimal(values.back()) << "\n";
      if (c.count_ops) out << "naive_ops " << scope.elapsed() << "\n";
    } else {
      const FastResult r = inner_product_fast(p.f, p.g, c.fast_options());
      values.push_back(r.value);
      out << "fast " << exact_and_decimal(r.value) << "\n";
      if (c.count_ops)
        out << "fast_ops " << r.field_ops << "\nfast_ops_total " << r.field_ops_total << "\nprimes " << r.primes_used
            << "\ncliques " << r.cliques << "\nclique_size " << r.clique_size << "\ncrossings " << r.crossings << "\n";
    }
  }
  if (values.size() == 2) out << (values[0] == values[1] ? "MATCH" : "MISMATCH") << "\n";
  return kExitOk;
}

int cmd_distance(const Common& c, std::ostream& out, std::ostream& err) {
  LoadedPair p;
  if (!load_pair(c, p, err)) return kExitInvalid;
  std::vector<Scalar> values;
  for (Method m : c.methods()) {
    const Distance d = l2_distance(p.f, p.g, m, c.fast_options());
    values.push_back(d.squared);
    out << method_name(m) << " distance2=" << to_string(d.squared) << " distance=" << d.root << "\n";
  }
  if (values.size() == 2) out << (values[0] == values[1] ? "MATCH" : "MISMATCH") << "\n";
  return kExitOk;
}

int cmd_match(const Common& c, std::ostream& out, std::ostream& err) {
  LoadedPair p;
  if (!load_pair(c, p, err)) return kExitInvalid;
  std::vector<Fit> fits;
  for (Method m : c.methods()) {
    const Fit fit = best_fit(p.f, p.g, m, c.fast_options());
    fits.push_back(fit);
    if (c.methods().size() > 1) out << method_name(m) << " ";
    out << "s=" << to_string(fit.s) << " t=" << to_string(fit.t) << " residual2=" << to_string(fit.residual2);
    if (fit.degenerate) out << " degenerate-fit";
    out << "\n";
  }
  if (fits.size() == 2) {
    const bool same = fits[0].s == fits[1].s && fits[0].t == fits[1].t && fits[0].residual2 == fits[1].residual2;
    out << (same ? "MATCH" : "MISMATCH") << "\n";
  }
  return kExitOk;
}

int cmd_validate(const std::vector<std::string>& paths, std::ostream& out) {
  std::vector<Tin> tins;
  for (const auto& path : paths) tins.push_back(read_tin_file(path));
  Report r = tins.size() == 1 ? validate_tin(tins[0]) : validate_pair(tins[0], tins[1]);
  if (r.ok()) {
    out << "ok\n";
    return kExitOk;
  }
  for (const auto& v : r.violations) out << to_string(v.kind) << ": " << v.detail << "\n";
  return kExitInvalid;
}

struct GenerateArgs {
  std::size_t triangles = 2;
  std::uint64_t seed = 0;
  std::string surface = "random";
  std::string output;
  std::string flips = "delaunay";
  std::size_t boundary_points = 0;
  unsigned grid_bits = 12;
  std::string domain;
};

Rect parse_domain(const std::string& text) {
  std::vector<Scalar> v;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) v.push_back(parse_scalar(item));
  if (v.size() != 4 || !(v[0] < v[2]) || !(v[1] < v[3])) throw InvalidParameter("domain must be xmin,ymin,xmax,ymax");
  return {v[0], v[1], v[2], v[3]};
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  GenerateOptions o;
  o.triangles = a.triangles;
  o.seed = a.seed;
  o.surface = Surface::parse(a.surface);
  o.flips = parse_flip_mode(a.flips);
  o.boundary_points = a.boundary_points;
  o.grid_bits = a.grid_bits;
  if (!a.domain.empty()) o.domain = parse_domain(a.domain);
  const Tin t = generate_tin(o);
  if (a.output.empty() || a.output == "-")
    emit_tin(out, t);
  else
    write_tin_file(a.output, t);
  return kExitOk;
}

int cmd_cliques(const Common& c, bool stats, bool verify, const std::string& csv, std::ostream& out,
                std::ostream& err) {
  LoadedPair p;
  if (!load_pair(c, p, err)) return kExitInvalid;
  const NormalizedPair np = normalize_pair(p.f, p.g);
  const auto fe = build_edge_data(np.f);
  const auto ge = build_edge_data(np.g);
  const auto red = interior_segments(np.f, fe);
  const auto blue = interior_segments(np.g, ge);
  const CliqueFamily fam = build_clique_cover(red, blue);
  const CoverStats st = cover_stats(fam, red.size() + blue.size());
  std::ostringstream row;
  row << "segments,cliques,total_size,crossings,ratio\n"
      << st.segments << "," << st.cliques << "," << st.total_size << "," << st.crossings << "," << std::setprecision(6)
      << st.ratio << "\n";
  if (stats) {
    if (csv.empty()) {
      out << row.str();
    } else {
      std::ofstream f(csv);
      if (!f) throw ParseError("cannot write '" + csv + "'");
      f << row.str();
    }
  } else {
    for (const Clique& k : fam.cliques) {
      out << (k.red_lower ? "red<blue" : "blue<red") << " R={";
      for (std::size_t i = 0; i < k.red.size(); ++i) out << (i ? "," : "") << k.red[i];
      out << "} B={";
      for (std::size_t i = 0; i < k.blue.size(); ++i) out << (i ? "," : "") << k.blue[i];
      out << "}\n";
    }
  }
  if (verify) {
    const CoverCheck check = verify_clique_cover(fam, red, blue);
    out << "verify " << (check.ok() ? "pass" : "fail") << " crossings=" << check.crossings << "\n";
    for (const auto& msg : check.problems) out << "  " << msg << "\n";
    if (!check.ok()) return kExitInternal;
  }
  return kExitOk;
}

struct BenchArgs {
  std::vector<std::size_t> sizes{64, 128, 256, 512};
  std::size_t seeds = 1;
  std::string csv;
  std::string method = "both";
  std::uint64_t seed = 1;
};

int cmd_bench(const BenchArgs& a, const Common& c, std::ostream& out) {
  std::ofstream file;
  std::ostream* csv = &out;
  if (!a.csv.empty()) {
    file.open(a.csv);
    if (!file) throw ParseError("cannot write '" + a.csv + "'");
    csv = &file;
  }
  *csv << "n,method,field_ops,wall_ms,clique_cover_size,match\n";
  Common opts = c;
  opts.method = a.method;
  const auto methods = opts.methods();
  // Mean operation counts per (method, n) for the growth report.
  std::map<std::pair<std::string, std::size_t>, double> mean_ops;
  for (std::size_t n : a.sizes) {
    for (std::size_t s = 0; s < a.seeds; ++s) {
      GenerateOptions base;
      base.triangles = n;
      const TinPair pair = generate_pair(base, a.seed + 1000003 * s + n, Surface::random_uniform(),
                                         Surface::random_uniform());
      struct Row {
        std::string method;
        std::uint64_t ops;
        double ms;
        std::size_t cover;
        Scalar value;
      };
      std::vector<Row> rows;
      for (Method m : methods) {
        const auto start = std::chrono::steady_clock::now();
        Row row{method_name(m), 0, 0, 0, 0};
        if (m == Method::Naive) {
          const ops::Scope scope;
          row.value = naive_inner_product(pair.f, pair.g);
          row.ops = scope.elapsed();
        } else {
          const FastResult r = inner_product_fast(pair.f, pair.g, opts.fast_options());
          row.value = r.value;
          row.ops = r.field_ops;
          row.cover = r.clique_size;
        }
        row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        rows.push_back(std::move(row));
      }
      const bool both = rows.size() == 2;
      const bool match = both && rows[0].value == rows[1].value;
      for (const Row& r : rows) {
        *csv << n << "," << r.method << "," << r.ops << "," << std::fixed << std::setprecision(1) << r.ms
             << std::defaultfloat << "," << r.cover << "," << (both ? (match ? "true" : "false") : "") << "\n";
        mean_ops[{r.method, n}] += static_cast<double>(r.ops) / static_cast<double>(a.seeds);
      }
    }
  }
  if (!a.csv.empty()) {
    out << "method,n,mean_field_ops,ratio_to_previous\n";
    for (Method m : methods) {
      double prev = 0;
      std::size_t prev_n = 0;
      for (std::size_t n : a.sizes) {
        const double cur = mean_ops[{method_name(m), n}];
        out << method_name(m) << "," << n << "," << std::fixed << std::setprecision(0) << cur << ",";
        if (prev > 0 && n == 2 * prev_n)
          out << std::setprecision(3) << cur / prev;
        out << std::defaultfloat << "\n";
        prev = cur;
        prev_n = n;
      }
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact inner products, distances and matching of terrains", "tincalc"};
  app.require_subcommand(1);

  Common inner_c, dist_c, match_c, clique_c, bench_c;
  auto* inner = app.add_subcommand("inner", "integral of f*g");
  add_pair_options(inner, inner_c, true);
  auto* distance = app.add_subcommand("distance", "L2 distance between f and g");
  add_pair_options(distance, dist_c, true);
  auto* match = app.add_subcommand("match", "best s, t with f ~ s*g + t");
  add_pair_options(match, match_c, true);

  std::vector<std::string> validate_paths;
  auto* validate = app.add_subcommand("validate", "check one terrain or a pair");
  validate->add_option("files", validate_paths, "terrain files")->required()->expected(1, 2);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "write a random terrain");
  generate->add_option("--triangles", gen.triangles, "number of triangles");
  generate->add_option("--seed", gen.seed, "random seed");
  generate->add_option("--surface", gen.surface, "random, saddle, plane:a,b,c or poly:c0,c1,...");
  generate->add_option("-o,--output", gen.output, "output file (default stdout)");
  generate->add_option("--flips", gen.flips, "delaunay, random or none");
  generate->add_option("--boundary-points", gen.boundary_points, "extra vertices on the domain sides");
  generate->add_option("--grid-bits", gen.grid_bits, "lattice resolution in bits")->check(CLI::Range(2, 30));
  generate->add_option("--domain", gen.domain, "xmin,ymin,xmax,ymax");

  bool stats = false, verify = false;
  std::string stats_csv;
  auto* cliques = app.add_subcommand("cliques", "clique cover of interior edge crossings");
  add_pair_options(cliques, clique_c, false);
  cliques->add_flag("--stats", stats, "print summary statistics as CSV");
  cliques->add_flag("--verify", verify, "check the cover by brute force");
  cliques->add_option("--csv", stats_csv, "write the statistics to a file");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "operation counts and timings on generated pairs");
  bench->add_option("--sizes", bench_args.sizes, "triangle counts")->delimiter(',');
  bench->add_option("--seeds", bench_args.seeds, "pairs per size");
  bench->add_option("--seed", bench_args.seed, "base seed");
  bench->add_option("--csv", bench_args.csv, "CSV output file (default stdout)");
  bench->add_option("--method", bench_args.method, "naive, fast or both")
      ->check(CLI::IsMember({"naive", "fast", "both"}));
  bench->add_option("--primes", bench_c.primes, "initial number of primes (0: estimate)");
  bench->add_option("--prime-bits", bench_c.prime_bits, "prime size in bits")->check(CLI::Range(24, 62));
  bench->add_option("--form", bench_c.form, "difference or literal")->check(CLI::IsMember({"difference", "literal"}));
  bench->add_option("--cutover", bench_c.cutover, "largest clique side summed pair by pair");
  bench->add_flag("--count-ops", bench_c.count_ops, "accepted for symmetry; counts are always reported");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitParse;
  }

  try {
    if (*inner) return cmd_inner(inner_c, out, err);
    if (*distance) return cmd_distance(dist_c, out, err);
    if (*match) return cmd_match(match_c, out, err);
    if (*validate) return cmd_validate(validate_paths, out);
    if (*generate) return cmd_generate(gen, out);
    if (*cliques) return cmd_cliques(clique_c, stats, verify, stats_csv, out, err);
    if (*bench) return cmd_bench(bench_args, bench_c, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace tincalc
