// Command-line driver: graph generation, drawing validation and rendering,
// arc-quad utilities, and the fan-closure search harness.  All documents are
// JSON with schema tags; paths of "-" mean stdin/stdout.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lombardi/jsonio.hpp"

namespace {

using namespace lombardi;

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::kBadParameter, "cannot open input file '" + path + "'");
    ss << in.rdbuf();
  }
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kBadParameter, "cannot open output file '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::kBadParameter, "failed writing to '" + path + "'");
}

// Tolerance precedence: explicit flag, then LOMBARDI_TOL, then the default.
double resolve_tol(bool flag_given, double flag_value) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("LOMBARDI_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0))
      fail(ErrorCode::kBadParameter, "LOMBARDI_TOL must be a positive number");
    return v;
  }
  return 1e-6;
}

EmbeddedGraph build_family(const std::string& family, int k) {
  if (family == "B") return build_b(k);
  if (family == "S") return build_s(k);
  if (family == "S-maximal") return build_s_maximal(k);
  if (family == "S-bipartite") return build_s_bipartite(k);
  if (family == "apex-tree") return build_apex_tree(k);
  fail(ErrorCode::kBadParameter, "unknown family '" + family + "'");
}

double parse_theta(const std::string& spec, int k) {
  if (spec == "B") return kPi / k;
  if (spec == "S") return kPi / (2 * k);
  if (spec.rfind("custom:", 0) == 0) {
    std::string value = spec.substr(7);
    char* end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
      fail(ErrorCode::kBadParameter, "cannot parse theta value '" + value + "'");
    return v;
  }
  fail(ErrorCode::kBadParameter, "theta must be B, S, or custom:<radians>");
}

ArcQuad quad_from_input(const std::string& path, double tol) {
  return parse_arcquad(read_input(path), tol);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inversive-geometry toolkit for Lombardi graph drawings"};
  app.require_subcommand(1);
  int exit_code = 0;

  // gen: write one of the graph families as a graph document.
  std::string gen_family, gen_out = "-";
  int gen_k = 0;
  CLI::App* gen = app.add_subcommand("gen", "Generate a graph family document");
  gen->add_option("family", gen_family, "Family: B, S, S-maximal, S-bipartite, apex-tree")
      ->required();
  gen->add_option("k", gen_k, "Family parameter k")->required();
  gen->add_option("out", gen_out, "Output path or - for stdout");
  gen->callback([&] { write_output(gen_out, write_graph(build_family(gen_family, gen_k)) + "\n"); });

  // validate: check a drawing document, print the report, signal via exit code.
  std::string val_in = "-";
  double val_tol = 1e-6;
  bool val_tol_given = false;
  CLI::App* val = app.add_subcommand("validate", "Validate a drawing document");
  val->add_option("input", val_in, "Drawing document path or - for stdin");
  val->add_option("--tol", val_tol, "Angle/crossing tolerance")
      ->each([&](const std::string&) { val_tol_given = true; });
  val->callback([&] {
    LombardiDrawing d = parse_drawing(read_input(val_in));
    ValidationReport report = validate(d, resolve_tol(val_tol_given, val_tol));
    write_output("-", write_validation_report(report) + "\n");
    if (!report.valid()) exit_code = 1;
  });

  // render: rasterize a drawing document to SVG.
  std::string ren_in, ren_out, ren_palette = "color";
  double ren_scale = 100;
  CLI::App* ren = app.add_subcommand("render", "Render a drawing document to SVG");
  ren->add_option("input", ren_in, "Drawing document path or - for stdin")->required();
  ren->add_option("output", ren_out, "SVG path or - for stdout")->required();
  ren->add_option("--palette", ren_palette, "Vertex palette: color or mono")
      ->check(CLI::IsMember({"color", "mono"}));
  ren->add_option("--scale", ren_scale, "World units to pixels");
  ren->callback([&] {
    LombardiDrawing d = parse_drawing(read_input(ren_in));
    StyleOptions style;
    style.scale = ren_scale;
    style.monochrome = ren_palette == "mono";
    write_output(ren_out, render_svg(d, style));
  });

  // certify: run the fan-closure search and emit its report.
  int cert_k = 0, cert_budget = 1000, cert_workers = 0;
  std::uint64_t cert_seed = 0;
  std::string cert_theta = "B", cert_out = "-";
  CLI::App* cert = app.add_subcommand("certify", "Search for closed fan configurations");
  cert->add_option("k", cert_k, "Number of quads in a closed fan")->required();
  cert->add_option("--theta", cert_theta, "Vertex angle: B (pi/k), S (pi/2k), custom:<radians>");
  cert->add_option("--budget", cert_budget, "Candidate chains to sample");
  cert->add_option("--seed", cert_seed, "RNG seed (required, no ambient entropy)")
      ->required();
  cert->add_option("--workers", cert_workers, "Worker threads (0 = auto)");
  cert->add_option("out", cert_out, "Report path or - for stdout");
  cert->callback([&] {
    double theta = parse_theta(cert_theta, cert_k);
    SearchReport report = closure_search(cert_k, theta, cert_budget, cert_seed, cert_workers);
    write_output(cert_out, write_search_report(report) + "\n");
  });

  // arcquad: build and measure equiangular arc-quads.
  CLI::App* aq = app.add_subcommand("arcquad", "Arc-quad construction and measurement");
  aq->require_subcommand(1);

  double aqb_theta = 0, aqb_phi1 = 0, aqb_radius = 1;
  std::vector<double> aqb_positions{0, kPi / 2, kPi, 3 * kPi / 2};
  std::vector<double> aqb_center{0, 0};
  bool aqb_outside = false;
  std::string aqb_out = "-";
  CLI::App* aqb = aq->add_subcommand("build", "Build a quad on a circle");
  aqb->add_option("--theta", aqb_theta, "Vertex angle")->required();
  aqb->add_option("--phi1", aqb_phi1, "Lens angle of the first side pair")->required();
  aqb->add_option("--positions", aqb_positions, "Four vertex angles on the circle")
      ->expected(4);
  aqb->add_option("--center", aqb_center, "Circle center x y")->expected(2);
  aqb->add_option("--radius", aqb_radius, "Circle radius");
  aqb->add_flag("--outside", aqb_outside, "Measure angles on the outside of the circle");
  aqb->add_option("out", aqb_out, "Output path or - for stdout");
  aqb->callback([&] {
    GeneralizedCircle c =
        circle_from_center_radius(Complex(aqb_center[0], aqb_center[1]), aqb_radius);
    std::array<double, 4> pos{aqb_positions[0], aqb_positions[1], aqb_positions[2],
                              aqb_positions[3]};
    ArcQuad q = build_from_circle(c, pos, aqb_theta, aqb_phi1, !aqb_outside);
    write_output(aqb_out, write_arcquad(q) + "\n");
  });

  std::string aqc_in = "-";
  double aqc_tol = 1e-7;
  bool aqc_tol_given = false;
  CLI::App* aqc = aq->add_subcommand("check-cyclic", "Check that a quad document is equiangular and cyclic");
  aqc->add_option("input", aqc_in, "Quad document path or - for stdin");
  aqc->add_option("--tol", aqc_tol, "Residual tolerance")
      ->each([&](const std::string&) { aqc_tol_given = true; });
  aqc->callback([&] {
    double tol = aqc_tol_given ? aqc_tol : 1e-7;
    try {
      ArcQuad q = quad_from_input(aqc_in, tol);
      std::string out = "{\"schema\":\"arcquad-check/1\",\"ok\":true,\"cyclic_residual\":";
      detail::append_double(&out, q.cyclic_residual);
      out += ",\"theta\":";
      detail::append_double(&out, q.theta);
      out += ",\"phi1\":";
      detail::append_double(&out, q.phi1);
      out += ",\"phi2\":";
      detail::append_double(&out, q.phi2);
      out += "}";
      write_output("-", out + "\n");
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kBadParameter) throw;  // malformed document
      std::string out = "{\"schema\":\"arcquad-check/1\",\"ok\":false,\"error\":";
      detail::append_string(&out, e.what());
      out += "}";
      write_output("-", out + "\n");
      exit_code = 1;
    }
  });

  std::string aqt_in = "-";
  CLI::App* aqt = aq->add_subcommand("tilt", "Report a quad's tilt and angles");
  aqt->add_option("input", aqt_in, "Quad document path or - for stdin");
  aqt->callback([&] {
    ArcQuad q = quad_from_input(aqt_in, 1e-7);
    std::string out = "{\"schema\":\"arcquad-tilt/1\",\"tilt\":";
    detail::append_double(&out, tilt(q));
    out += ",\"theta\":";
    detail::append_double(&out, q.theta);
    out += ",\"phi1\":";
    detail::append_double(&out, q.phi1);
    out += ",\"phi2\":";
    detail::append_double(&out, q.phi2);
    out += "}";
    write_output("-", out + "\n");
  });

  std::string aqr_in = "-", aqr_out = "-";
  CLI::App* aqr = aq->add_subcommand("rhombus", "Map a quad to its canonical rhombus form");
  aqr->add_option("input", aqr_in, "Quad document path or - for stdin");
  aqr->add_option("out", aqr_out, "Output path or - for stdout");
  aqr->callback([&] {
    ArcQuad q = quad_from_input(aqr_in, 1e-7);
    write_output(aqr_out, write_rhombus_form(canonical_rhombus_form(q)) + "\n");
  });

  std::string aqs_in = "-";
  CLI::App* aqs = aq->add_subcommand("sigma-span", "Measure a quad's bipolar sigma span");
  aqs->add_option("input", aqs_in, "Quad document path or - for stdin");
  aqs->callback([&] {
    ArcQuad q = quad_from_input(aqs_in, 1e-7);
    double span = sigma_span(q);
    double predicted = sigma_span_from_angles(q);
    std::string out = "{\"schema\":\"sigma-span/1\",\"sigma_span\":";
    detail::append_double(&out, span);
    out += ",\"predicted\":";
    detail::append_double(&out, predicted);
    out += ",\"difference\":";
    detail::append_double(&out, wrap_pi(span - predicted));
    out += "}";
    write_output("-", out + "\n");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
