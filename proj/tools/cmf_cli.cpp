#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cmf/errors.hpp"
#include "cmf/json_io.hpp"

using namespace cmf;
using io::json;

namespace {

struct Exit {
  int code;
  json report;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  namespace fs = std::filesystem;
  fs::path target(path), tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw SchemaError("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw SchemaError("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);)
    if (!part.empty()) out.push_back(part);
  return out;
}

Rational rational_arg(const std::string& s) {
  try {
    return Rational::parse(s);
  } catch (const std::invalid_argument&) {
    throw SchemaError("malformed rational \"" + s + "\"");
  }
}

// "x,y;x,y" (y optional off plane curves)
std::vector<Point> parse_points(const std::string& s) {
  std::vector<Point> pts;
  for (const auto& p : split(s, ';')) {
    auto xy = split(p, ',');
    if (xy.empty() || xy.size() > 2) throw SchemaError("point \"" + p + "\" is not x or x,y");
    pts.emplace_back(rational_arg(xy[0]), xy.size() == 2 ? rational_arg(xy[1]) : Rational());
  }
  return pts;
}

// "r,s,c;..." terms of a polynomial in x, y
BiPoly parse_terms(const std::string& s) {
  BiPoly f;
  for (const auto& t : split(s, ';')) {
    auto rsc = split(t, ',');
    if (rsc.size() != 3) throw SchemaError("term \"" + t + "\" is not r,s,c");
    try {
      f += BiPoly::monomial(rational_arg(rsc[2]), static_cast<unsigned>(std::stoul(rsc[0])),
                            static_cast<unsigned>(std::stoul(rsc[1])));
    } catch (const std::logic_error&) {
      throw SchemaError("bad exponent in term \"" + t + "\"");
    }
  }
  return f;
}

CurveModel curve_arg(const std::string& model, const std::string& file) {
  if (!file.empty()) return io::parse_curve(read_json(file));
  if (model == "line") return CurveModel::affine_line();
  if (model == "torus") return CurveModel::torus();
  throw SchemaError("unknown model \"" + model + "\" (line, torus, or pass --curve)");
}

json error_report(int code, const std::string& type, const std::string& message, const std::string& residual = {}) {
  json e{{"code", code}, {"type", type}, {"message", message}};
  if (!residual.empty()) e["residual"] = residual;
  return {{"error", e}};
}

struct Options {
  std::string input, output, model = "line", curve_file, points, alphas, form;
  bool moser = false;
  long unit_power = 0;
  int x_power = 0;
  std::optional<unsigned> kmax;
  std::uint64_t seed = 0;
  unsigned trials = 100;
};

json cmd_make_point(const Options& o) {
  CurveModel c = curve_arg(o.model, o.curve_file);
  std::vector<Point> pts = parse_points(o.points);
  std::vector<Rational> al;
  if (o.alphas.empty())
    for (size_t i = 0; i < pts.size(); ++i) al.push_back(Rational(static_cast<long>(i * i) - 1, 2));
  else
    for (const auto& a : split(o.alphas, ';')) al.push_back(rational_arg(a));
  return io::emit(o.moser ? moser_point(c, pts, al) : generic_point(c, pts, al));
}

Exit cmd_verify(const Options& o) {
  RelationReport r = verify_relations(io::parse_point(read_json(o.input)));
  json out = io::emit(r);
  if (r.pass) return {0, out};
  const RelationCheck* f = r.first_failure();
  json err = error_report(2, "precondition", "relation \"" + f->name + "\" fails");
  err["error"]["residual"] = io::emit(f->residual);
  out.update(err);
  return {2, out};
}

Exit cmd_codim(const Options& o) {
  json in = read_json(o.input);
  FractionalIdeal I = in.contains("generators") ? io::parse_ideal(in) : ideal_generators(io::parse_point(in));
  unsigned k = o.kmax ? *o.kmax : default_kmax(I);
  CodimReport rep = codim(I, k);
  json out = io::emit(rep);
  out["kmax"] = k;
  return {0, out};
}

json cmd_act(const Options& o) {
  CMPoint p = io::parse_point(read_json(o.input));
  if (!o.form.empty()) return io::emit(omega_twist(p, {p.curve, parse_terms(o.form), o.x_power}));
  return io::emit(lambda_act(p, o.unit_power));
}

Exit cmd_euler(const Options& o) {
  CurveModel c = curve_arg(o.model, o.curve_file);
  std::vector<Point> pts = o.points.empty() ? std::vector<Point>{} : parse_points(o.points);
  std::mt19937_64 rng(o.seed);
  json fails = json::array();
  unsigned agree = 0;
  for (unsigned t = 0; t < o.trials; ++t) {
    size_t nu = rng() % 4, nv = rng() % 4, iu = rng() % 3, iv = rng() % 3;
    BModule U = random_bmodule(c, nu, iu, rng, pts), V = random_bmodule(c, nv, iv, rng, pts);
    long hom = static_cast<long>(hom_dim(c, U, V)), ext = static_cast<long>(ext1_dim(c, U, V));
    long chi = euler_char(U, V);
    if (hom - ext == chi) {
      ++agree;
    } else {
      fails.push_back({{"trial", t}, {"dims", {nu, iu, nv, iv}}, {"hom", hom}, {"ext1", ext}, {"euler", chi}});
    }
  }
  json out{{"curve", io::emit(c)}, {"seed", o.seed}, {"trials", o.trials}, {"agree", agree}, {"failures", fails}};
  return {fails.empty() ? 0 : 3, out};
}

Exit cmd_szego(const Options& o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  unsigned agree = 0;
  json first;
  for (unsigned t = 0; t < o.trials; ++t) {
    std::map<BiPoly::Key, Rational> terms;
    for (unsigned r = 0; r <= 5; ++r)
      for (unsigned s = 0; s <= 5; ++s)
        if (int v = coef(rng); v != 0) terms[{r, s}] = Rational(v);
    LocalKernel K{BiPoly(terms), 2};
    HalfFormOp op = extract_operator(K);
    bool ok = true;
    for (unsigned k = 0; k <= 5; ++k) {
      UniPoly f = UniPoly::monomial(1, k, Symbol::z);
      ok = ok && residue_action(K, f) == op.apply(f);
    }
    if (ok) ++agree;
    if (t == 0) first = {{"phi", io::emit(K.phi)}, {"operator", io::emit(op)}};
  }
  UniPoly z = UniPoly::variable(Symbol::z);
  json gamma = json::array();
  bool gamma_ok = true;
  for (const UniPoly& w : {z, z * Rational(2), z + z * z}) {
    bool pass = gamma_skew_check(w);
    gamma_ok = gamma_ok && pass;
    gamma.push_back({{"w", io::emit(w)}, {"pass", pass}});
  }
  json out{{"seed", o.seed}, {"trials", o.trials}, {"agree", agree}, {"gamma", gamma}};
  if (!first.is_null()) out["first_kernel"] = first;
  return {agree == o.trials && gamma_ok ? 0 : 3, out};
}

int run(const std::string& name, const Options& o) {
  Exit e{0, json()};
  try {
    if (name == "make-point") e.report = cmd_make_point(o);
    else if (name == "verify") e = cmd_verify(o);
    else if (name == "forge") e.report = io::emit(ideal_generators(io::parse_point(read_json(o.input))));
    else if (name == "codim") e = cmd_codim(o);
    else if (name == "act") e.report = cmd_act(o);
    else if (name == "commutant") {
      CMPoint p = io::parse_point(read_json(o.input));
      e.report = {{"n", p.n}, {"commutant_dim", commutant_dim(p)}};
    } else if (name == "tangent") e.report = io::emit(tangent(io::parse_point(read_json(o.input))));
    else if (name == "euler") e = cmd_euler(o);
    else if (name == "szego-demo") e = cmd_szego(o);
  } catch (const SchemaError& ex) {
    e = {1, error_report(1, "schema", ex.what())};
  } catch (const PreconditionError& ex) {
    e = {2, error_report(2, "precondition", ex.what(), ex.residual)};
  } catch (const SingularMatrix& ex) {
    e = {2, error_report(2, "precondition", ex.what(), ex.determinant)};
  } catch (const SizeMismatch& ex) {
    e = {2, error_report(2, "precondition", ex.what())};
  } catch (const UnsupportedModel& ex) {
    e = {2, error_report(2, "precondition", ex.what())};
  } catch (const std::exception& ex) {
    e = {3, error_report(3, "invariant", ex.what())};
  }
  if (e.code != 0 && e.report.contains("error"))
    std::cerr << "cmf " << name << ": " << e.report["error"]["message"].get<std::string>() << "\n";
  try {
    write_json(o.output, e.report);
  } catch (const std::exception& ex) {
    std::cerr << "cmf " << name << ": " << ex.what() << "\n";
    return e.code ? e.code : 1;
  }
  return e.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calogero-Moser spaces, fractional ideals and their invariants"};
  app.require_subcommand(1);
  Options o;

  auto in = [&](CLI::App* s) { s->add_option("-i,--input", o.input, "input JSON file")->required(); };
  auto out = [&](CLI::App* s) { s->add_option("-o,--output", o.output, "output JSON file (stdout if omitted)"); };
  auto curve = [&](CLI::App* s) {
    s->add_option("--model", o.model, "line or torus")->check(CLI::IsMember({"line", "torus"}));
    s->add_option("--curve", o.curve_file, "curve JSON file");
  };

  auto* mk = app.add_subcommand("make-point", "Moser-type point from distinct curve points");
  curve(mk);
  mk->add_option("--points", o.points, "x,y;x,y;...")->required();
  mk->add_option("--alphas", o.alphas, "a;b;... (default (i^2-1)/2)");
  mk->add_flag("--moser", o.moser, "divided-difference form (repeated y allowed)");
  out(mk);

  for (const char* name : {"verify", "forge", "commutant", "tangent"}) {
    auto* s = app.add_subcommand(name, std::string(name) + " on a point file");
    in(s);
    out(s);
  }

  auto* cd = app.add_subcommand("codim", "codimension sequence of a point or ideal file");
  in(cd);
  out(cd);
  cd->add_option("--kmax", o.kmax, "top filtration degree")->envname("CM_FORGE_KMAX");

  auto* act = app.add_subcommand("act", "unit or one-form action on a point");
  in(act);
  out(act);
  auto* up = act->add_option("--unit-power", o.unit_power, "r in u = x^r (torus)");
  auto* fm = act->add_option("--form", o.form, "g as r,s,c;... so that Z <- Z + g(X,Y) X^p");
  act->add_option("--x-power", o.x_power, "p (torus)")->needs(fm);
  up->excludes(fm);

  auto* eu = app.add_subcommand("euler", "random-module check of hom - ext1 = euler");
  curve(eu);
  eu->add_option("--points", o.points, "curve points for plane-curve blocks");
  out(eu);

  auto* sz = app.add_subcommand("szego-demo", "residue calculus on random kernels");
  out(sz);

  for (auto* s : {eu, sz}) {
    s->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    s->add_option("--trials", o.trials, "number of random trials")->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  return run(app.get_subcommands().front()->get_name(), o);
}
