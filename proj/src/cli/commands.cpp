#include "rqichan/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rqichan/estimation/amplitude.hpp"
#include "rqichan/estimation/noon.hpp"
#include "rqichan/fock/spectral.hpp"
#include "rqichan/infotheory/closed_form.hpp"
#include "rqichan/numerics/kinematics.hpp"
#include "rqichan/optimize/capacity.hpp"
#include "rqichan/optimize/quantities.hpp"
#include "rqichan/optimize/sweep.hpp"

namespace rqichan::cli {

namespace {

using channel::Rail;
using infotheory::ClosedForm;
using optimize::Axis;
using optimize::Evaluation;

struct Precision {
  optimize::TruncationConfig truncation;
  numerics::ConvergenceConfig series;
  optimize::SweepConfig sweep;
};

Precision precision(const RunConfig& c) {
  Precision p;
  p.truncation.eps = c.number("eps", p.truncation.eps);
  p.truncation.tail_mass = c.number("tail-mass", p.truncation.tail_mass);
  p.truncation.k_max = c.integer("k-max", p.truncation.k_max);
  const double se = c.number("series-eps", p.series.eps_tail);
  p.series.eps_tail = p.series.eps_pc = se;
  const long mt = c.integer("max-terms", static_cast<long>(p.series.max_terms));
  if (mt < 2) throw UsageError("--max-terms must be at least 2");
  p.series.max_terms = static_cast<std::size_t>(mt);
  const long th = c.integer("threads", 0);
  if (th < 0) throw UsageError("--threads must be >= 0");
  p.sweep.threads = static_cast<unsigned>(th);
  if (!(p.truncation.eps > 0.0)) throw UsageError("--eps must be positive");
  if (!(p.truncation.tail_mass > 0.0 && p.truncation.tail_mass < 1.0)) throw UsageError("--tail-mass must lie in (0,1)");
  if (p.truncation.k_max < 3) throw UsageError("--k-max must be at least 3");
  try {
    p.series.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return p;
}

Rail rail_of(const RunConfig& c) {
  const std::string r = c.get("rail", "single");
  if (r == "single") return Rail::single;
  if (r == "dual") return Rail::dual;
  throw UsageError("--rail must be single or dual");
}

std::string rail_word(Rail r) { return r == Rail::single ? "single-rail" : "dual-rail"; }

std::vector<double> grid_or_value(const RunConfig& c, const std::string& grid_key, const std::string& value_key,
                                  std::optional<double> fallback) {
  if (c.has(grid_key) && c.has(value_key)) throw UsageError("give either --" + grid_key + " or --" + value_key);
  if (c.has(grid_key)) return parse_grid(c.get(grid_key, ""));
  if (c.has(value_key)) return {c.number(value_key, 0.0)};
  if (fallback) return {*fallback};
  throw UsageError("missing --" + grid_key + " or --" + value_key);
}

std::vector<double> r_axis(const RunConfig& c) {
  if (c.has("a")) {
    if (c.has("r") || c.has("r-grid")) throw UsageError("give the squeezing either as r or as acceleration a");
    const double a = c.number("a", 0.0), omega = c.number("omega", 1.0);
    try {
      return {numerics::squeezing_from_acceleration(omega, a)};
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  if (c.has("omega")) throw UsageError("--omega only makes sense together with --a");
  auto v = grid_or_value(c, "r-grid", "r", std::nullopt);
  for (double r : v) {
    if (r < 0.0) throw UsageError("squeezing r must be >= 0");
  }
  return v;
}

void check_unit(const std::vector<double>& v, const std::string& what) {
  for (double x : v) {
    if (x < 0.0 || x > 1.0) throw UsageError(what + " must lie in [0,1]");
  }
}

std::string method_of(const RunConfig& c, const std::string& fallback) {
  const std::string m = c.get("method", fallback);
  if (m != "closed" && m != "numeric") throw UsageError("--method must be closed or numeric");
  return m;
}

Evaluation closed_eval(const numerics::SeriesResult& s) { return {s.value, 0, s.converged, {}}; }

Table from_sweep(const optimize::SweepTable& sweep, std::vector<std::string> axis_columns,
                 std::vector<std::string> value_columns, bool integer_first_axis = false) {
  Table t;
  t.columns = std::move(axis_columns);
  t.columns.insert(t.columns.end(), value_columns.begin(), value_columns.end());
  t.columns.push_back("cutoff_used");
  t.columns.push_back("converged");
  for (const auto& row : sweep.rows) {
    std::vector<Cell> cells;
    for (std::size_t a = 0; a < row.point.size(); ++a) {
      if (a == 0 && integer_first_axis) {
        cells.emplace_back(static_cast<long long>(std::llround(row.point[a])));
      } else {
        cells.emplace_back(row.point[a]);
      }
    }
    cells.emplace_back(row.value);
    for (std::size_t k = 1; k < value_columns.size(); ++k) {
      cells.emplace_back(k - 1 < row.extra.size() ? row.extra[k - 1] : std::nan(""));
    }
    cells.emplace_back(static_cast<long long>(row.cutoff_used));
    cells.emplace_back(row.converged);
    if (!row.converged) {
      t.converged = false;
      std::string where;
      for (std::size_t a = 0; a < row.point.size(); ++a) {
        where += (a ? ", " : "") + sweep.axes[a].name + "=" + format_number(row.point[a]);
      }
      t.diagnostics.push_back(where + ": " + (row.error.empty() ? "not converged" : row.error));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

Table capacity(const RunConfig& c) {
  const Precision p = precision(c);
  const Rail rail = rail_of(c);
  const std::string payload = c.get("payload", "classical");
  if (payload != "classical" && payload != "quantum") throw UsageError("--payload must be classical or quantum");
  const std::string method = method_of(c, "numeric");
  const double q_R = c.number("q-r", 1.0);
  const double alpha2 = c.number("alpha2", 0.5);
  check_unit({q_R}, "q_R");
  check_unit({alpha2}, "alpha2");
  if (method == "closed" && q_R != 1.0) throw UsageError("closed forms exist only for q_R = 1");
  if (method == "closed" && rail == Rail::dual && alpha2 != 0.5) {
    throw UsageError("the dual-rail closed form is for alpha2 = 0.5");
  }
  const bool classical = payload == "classical";

  optimize::NamedEvaluator ev;
  ev.name = classical ? "holevo_bits" : "coherent_ebits";
  ev.fn = [=](std::span<const double> x) -> Evaluation {
    const double r = x[0];
    if (method == "closed") {
      if (classical) {
        return closed_eval(infotheory::closed_form_series(
            rail == Rail::single ? ClosedForm::holevo_single_classical : ClosedForm::holevo_dual_classical, r,
            alpha2, p.series));
      }
      auto s = infotheory::closed_form_series(
          rail == Rail::single ? ClosedForm::cond_entropy_single_quantum : ClosedForm::cond_entropy_dual_quantum, r,
          0.5, p.series);
      s.value = -s.value;
      return closed_eval(s);
    }
    return classical ? optimize::holevo_numeric(rail, r, q_R, alpha2, p.truncation)
                     : optimize::coherent_numeric(rail, r, q_R, p.truncation);
  };
  const auto sweep = optimize::parameter_sweep(ev, {Axis{"r", r_axis(c)}}, p.sweep);
  Table t = from_sweep(sweep, {"r"}, {ev.name});
  t.comments.push_back(std::string("figure: ") + (classical ? "Holevo information (bits) of the " : "coherent information (ebits) of the ") +
                       rail_word(rail) + (classical ? " classical" : " quantum") + " channel against squeezing r");
  t.comments.push_back("q_R=" + format_number(q_R) + (classical ? " alpha2=" + format_number(alpha2) : "") +
                       " method=" + method);
  return t;
}

Table fidelity(const RunConfig& c) {
  const Precision p = precision(c);
  const Rail rail = rail_of(c);
  const std::string method = method_of(c, "closed");
  optimize::NamedEvaluator ev;
  ev.name = "fidelity";
  ev.fn = [=](std::span<const double> x) -> Evaluation {
    if (method == "closed") {
      return closed_eval(infotheory::closed_form_series(
          rail == Rail::single ? ClosedForm::fidelity_single : ClosedForm::fidelity_dual, x[0], 0.5, p.series));
    }
    return optimize::fidelity_numeric(rail, x[0], p.truncation);
  };
  Table t = from_sweep(optimize::parameter_sweep(ev, {Axis{"r", r_axis(c)}}, p.sweep), {"r"}, {"fidelity"});
  t.comments.push_back("figure: fidelity between the " + rail_word(rail) + " images of logical 0 and 1 against squeezing r");
  t.comments.push_back("method=" + method);
  return t;
}

Table fisher(const RunConfig& c) {
  const Precision p = precision(c);
  if (!c.has("setup")) throw UsageError("fisher needs --setup");
  estimation::AmplitudeSetup setup;
  try {
    setup = estimation::parse_amplitude_setup(c.get("setup", ""));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string method = method_of(c, "closed");
  estimation::AmplitudeConfig ac;
  ac.eps = p.truncation.eps;
  ac.tail_mass = p.truncation.tail_mass;
  ac.k_max = p.truncation.k_max;
  optimize::NamedEvaluator ev;
  ev.name = "fisher";
  ev.fn = [=](std::span<const double> x) -> Evaluation {
    if (method == "closed") return {estimation::qfi_closed_form_amplitude(setup, x[0], x[1], p.series), 0, true, {}};
    const auto f = estimation::qfi_numeric_amplitude(setup, x[0], x[1], ac);
    return {f.value, f.cutoff_used, true, {}};
  };
  const std::vector<Axis> axes{{"r", r_axis(c)}, {"theta", grid_or_value(c, "theta-grid", "theta", std::nullopt)}};
  Table t = from_sweep(optimize::parameter_sweep(ev, axes, p.sweep), {"r", "theta"}, {"fisher"});
  t.comments.push_back("figure: amplitude-estimation quantum Fisher information, setup " +
                       std::string(estimation::amplitude_setup_name(setup)));
  t.comments.push_back("method=" + method);
  return t;
}

Table noon(const RunConfig& c) {
  Precision p = precision(c);
  const Rail rail = rail_of(c);
  std::vector<double> ns;
  if (c.has("N") && c.has("n-grid")) throw UsageError("give either --N or --n-grid");
  if (c.has("n-grid")) {
    ns = parse_grid(c.get("n-grid", ""));
  } else if (c.has("N")) {
    ns = {static_cast<double>(c.integer("N", 1))};
  } else {
    throw UsageError("noon needs --N or --n-grid");
  }
  for (double n : ns) {
    if (n < 1.0 || n != std::round(n)) throw UsageError("N must be a positive integer");
  }
  const double theta = c.number("theta", estimation::kNoonDefaultTheta);
  estimation::NoonConfig nc;
  nc.eps = p.truncation.eps;
  if (c.has("tail-mass")) nc.tail_mass = p.truncation.tail_mass;
  nc.k_max = p.truncation.k_max;
  optimize::NamedEvaluator ev;
  ev.name = "fisher";
  ev.fn = [=](std::span<const double> x) -> Evaluation {
    const auto f = estimation::noon_qfi(static_cast<int>(std::llround(x[0])), rail, x[1], theta, nc);
    return {f.value, f.cutoff_used, true, {}};
  };
  const std::vector<Axis> axes{{"N", ns}, {"r", r_axis(c)}};
  Table t = from_sweep(optimize::parameter_sweep(ev, axes, p.sweep), {"N", "r"}, {"fisher"}, true);
  t.comments.push_back("figure: " + rail_word(rail) + " NOON-state quantum Fisher information against squeezing r");
  t.comments.push_back("theta=" + format_number(theta));
  return t;
}

Table sweep(const RunConfig& c) {
  const Precision p = precision(c);
  const Rail rail = rail_of(c);
  const std::string q = c.get("quantity", "holevo");
  if (q != "holevo" && q != "coherent" && q != "fidelity") {
    throw UsageError("--quantity must be holevo, coherent or fidelity");
  }
  std::vector<Axis> axes{{"r", r_axis(c)}};
  if (q != "fidelity") {
    axes.push_back({"q_R", grid_or_value(c, "q-grid", "q-r", 1.0)});
    check_unit(axes.back().values, "q_R");
  } else if (c.has("q-grid") || c.has("q-r")) {
    throw UsageError("fidelity is defined for q_R = 1 only");
  }
  if (q == "holevo") {
    axes.push_back({"alpha2", grid_or_value(c, "alpha2-grid", "alpha2", 0.5)});
    check_unit(axes.back().values, "alpha2");
  } else if (c.has("alpha2-grid") || c.has("alpha2")) {
    throw UsageError("alpha2 only applies to the holevo quantity");
  }
  optimize::NamedEvaluator ev;
  ev.name = q == "holevo" ? "holevo_bits" : (q == "coherent" ? "coherent_ebits" : "fidelity");
  ev.fn = [=](std::span<const double> x) -> Evaluation {
    if (q == "holevo") return optimize::holevo_numeric(rail, x[0], x[1], x[2], p.truncation);
    if (q == "coherent") return optimize::coherent_numeric(rail, x[0], x[1], p.truncation);
    return optimize::fidelity_numeric(rail, x[0], p.truncation);
  };
  std::vector<std::string> names;
  for (const auto& a : axes) names.push_back(a.name);
  Table t = from_sweep(optimize::parameter_sweep(ev, axes, p.sweep), names, {ev.name});
  t.comments.push_back("figure: " + rail_word(rail) + " " + ev.name + " over the wedge weight q_R and squeezing r");
  return t;
}

Table optimize_cmd(const RunConfig& c) {
  const Precision p = precision(c);
  optimize::CapacityConfig cc;
  cc.truncation = p.truncation;
  cc.coarse_step = c.number("coarse-step", cc.coarse_step);
  cc.fine_step = c.number("fine-step", cc.fine_step);
  if (!(cc.coarse_step > 0.0 && cc.coarse_step <= 1.0 && cc.fine_step > 0.0 && cc.fine_step <= cc.coarse_step)) {
    throw UsageError("need 0 < fine-step <= coarse-step <= 1");
  }
  cc.fine_half_width = cc.coarse_step / 2.0;
  optimize::NamedEvaluator ev;
  ev.name = "alpha2_opt";
  ev.fn = [=](std::span<const double> x) -> Evaluation {
    const auto o = optimize::optimize_capacity_2d(x[0], Rail::single, cc);
    return {o.alpha2, o.cutoff_used, true, {o.q_R, o.value}};
  };
  Table t = from_sweep(optimize::parameter_sweep(ev, {Axis{"r", r_axis(c)}}, p.sweep), {"r"},
                       {"alpha2_opt", "qR_opt", "holevo_bits"});
  t.comments.push_back("figure: single-rail Holevo information maximised over alpha2 and q_R against squeezing r");
  return t;
}

Table verify() {
  Table t;
  t.columns = {"suite", "passed", "detail"};
  t.comments.push_back("invariant suites");
  for (const auto& s : run_verify_suites()) {
    t.rows.push_back({s.name, s.passed, s.detail});
    if (!s.passed) {
      t.invariants_ok = false;
      t.diagnostics.push_back(s.name + ": " + s.detail);
    }
  }
  return t;
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Table execute(const RunConfig& config) {
  Table t;
  switch (config.command) {
    case Command::capacity: t = capacity(config); break;
    case Command::fidelity: t = fidelity(config); break;
    case Command::fisher: t = fisher(config); break;
    case Command::noon: t = noon(config); break;
    case Command::sweep: t = sweep(config); break;
    case Command::optimize: t = optimize_cmd(config); break;
    case Command::verify: t = verify(); break;
  }
  t.comments.insert(t.comments.begin(), "rqichan " + std::string(command_name(config.command)));
  return t;
}

std::string render(const Table& table, Format format) {
  if (format == Format::csv) {
    std::string out;
    for (const auto& c : table.comments) out += "# " + c + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
    out += "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
      out += "\n";
    }
    return out;
  }
  nlohmann::ordered_json j;
  j["comments"] = table.comments;
  j["columns"] = table.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto jr = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (const auto* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) {
          jr.push_back(std::stod(format_number(*d)));
        } else {
          jr.push_back(nullptr);
        }
      } else if (const auto* i = std::get_if<long long>(&c)) {
        jr.push_back(*i);
      } else if (const auto* b = std::get_if<bool>(&c)) {
        jr.push_back(*b);
      } else {
        jr.push_back(std::get<std::string>(c));
      }
    }
    j["rows"].push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_run_config(argc, argv, out);
  } catch (const UsageError& e) {
    err << "rqichan: " << e.what() << "\n";
    return kUsage;
  }
  if (!cfg) return kSuccess;

  Table table;
  try {
    table = execute(*cfg);
  } catch (const UsageError& e) {
    err << "rqichan: " << e.what() << "\n";
    return kUsage;
  } catch (const optimize::TruncationError& e) {
    err << "rqichan: " << e.what() << "\n";
    return kNotConverged;
  } catch (const numerics::ConvergenceError& e) {
    err << "rqichan: " << e.what() << "\n";
    return kNotConverged;
  } catch (const std::invalid_argument& e) {
    err << "rqichan: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "rqichan: internal error: " << e.what() << "\n";
    return kInvariant;
  }

  const std::string text = render(table, cfg->format);
  if (cfg->output.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg->output, std::ios::binary);
    if (!f || !(f << text)) {
      err << "rqichan: cannot write " << cfg->output << "\n";
      return kUsage;
    }
  }
  if (!table.invariants_ok) {
    err << "rqichan: " << table.diagnostics.size() << " invariant suite(s) failed, first: " << table.diagnostics.front()
        << "\n";
    return kInvariant;
  }
  if (!table.converged) {
    err << "rqichan: " << table.diagnostics.size() << " row(s) did not converge, first: " << table.diagnostics.front()
        << "\n";
    return kNotConverged;
  }
  return kSuccess;
}

}  // namespace rqichan::cli
