#include "qdiscord/survey.hpp"
#include "qdiscord/families.hpp"
#include "qdiscord/geometric.hpp"
#include "qdiscord/normal_form.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qdiscord {

const char* const kSurveyHeader =
    "id,seed,sampler_kind,rank,discord,classical,mutual_info,dg_normalized,theta_min,phi_min,n_stationary,hierarchy_margin";

namespace {

constexpr std::uint64_t kChunk = 64;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_field(const std::string& s, const char* name) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::runtime_error(std::string("bad value for ") + name + ": '" + s + "'");
  return v;
}

}  // namespace

SurveyRecord analyse_state(const DensityMatrix& rho, const SolverConfig& cfg) {
  const DiscordResult d = quantum_discord(rho, cfg);
  const GeometricResult g = geometric_discord(rho, cfg.measured);
  SurveyRecord r;
  r.discord = d.discord;
  r.classical = d.classical_correlations;
  r.mutual_info = d.mutual_information;
  r.dg_normalized = g.dg_normalized;
  r.theta_min = d.minimizer.theta;
  r.phi_min = d.minimizer.phi;
  r.n_stationary = static_cast<int>(d.stationary_points.size());
  r.hierarchy_margin = hierarchy_check(d.discord, g.dg_normalized).margin;
  r.rank = numerical_rank(rho);
  return r;
}

std::vector<SurveyRecord> run_survey(const SurveyOptions& opts) {
  if (opts.n < 1) throw std::invalid_argument("survey size must be at least 1");
  validate(opts.solver);
  std::vector<SurveyRecord> records(opts.n);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> done{0};
  std::mutex progress_mutex;

  auto work = [&] {
    for (;;) {
      const std::uint64_t begin = next.fetch_add(kChunk);
      if (begin >= opts.n) return;
      const std::uint64_t end = std::min<std::uint64_t>(opts.n, begin + kChunk);
      for (std::uint64_t i = begin; i < end; ++i) {
        const Sample s = sample_at(opts.sampler, i);
        SurveyRecord r = analyse_state(s.state, opts.solver);
        r.id = i;
        r.seed = opts.sampler.seed;
        r.sampler_kind = sampler_name(s.drawn_from);
        records[i] = std::move(r);
      }
      const std::uint64_t finished = done.fetch_add(end - begin) + (end - begin);
      if (opts.progress) {
        std::lock_guard lock(progress_mutex);
        opts.progress(finished, opts.n);
      }
    }
  };

  const unsigned workers = std::max(1u, opts.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return records;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
  return buf;
}

void write_survey_csv(std::ostream& os, const std::vector<SurveyRecord>& records) {
  os << kSurveyHeader << '\n';
  for (const auto& r : records) {
    os << r.id << ',' << r.seed << ',' << r.sampler_kind << ',' << r.rank << ',' << format_number(r.discord) << ','
       << format_number(r.classical) << ',' << format_number(r.mutual_info) << ',' << format_number(r.dg_normalized) << ','
       << format_number(r.theta_min) << ',' << format_number(r.phi_min) << ',' << r.n_stationary << ','
       << format_number(r.hierarchy_margin) << '\n';
  }
}

std::vector<SurveyRecord> read_survey_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty survey file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSurveyHeader) throw std::runtime_error("unexpected survey header: " + line);
  std::vector<SurveyRecord> out;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 12) throw std::runtime_error("line " + std::to_string(line_no) + ": expected 12 fields");
    SurveyRecord r;
    r.id = parse_field<std::uint64_t>(f[0], "id");
    r.seed = parse_field<std::uint64_t>(f[1], "seed");
    r.sampler_kind = f[2];
    r.rank = parse_field<int>(f[3], "rank");
    r.discord = parse_field<double>(f[4], "discord");
    r.classical = parse_field<double>(f[5], "classical");
    r.mutual_info = parse_field<double>(f[6], "mutual_info");
    r.dg_normalized = parse_field<double>(f[7], "dg_normalized");
    r.theta_min = parse_field<double>(f[8], "theta_min");
    r.phi_min = parse_field<double>(f[9], "phi_min");
    r.n_stationary = parse_field<int>(f[10], "n_stationary");
    r.hierarchy_margin = parse_field<double>(f[11], "hierarchy_margin");
    out.push_back(std::move(r));
  }
  return out;
}

BoundaryCurve extract_boundary(const std::vector<SurveyRecord>& records, double bin_width) {
  if (!(bin_width > 0.0 && bin_width <= 1.0)) throw std::invalid_argument("bin width must be in (0, 1]");
  BoundaryCurve curve;
  curve.bin_width = bin_width;
  const auto n_bins = static_cast<std::size_t>(std::ceil(1.0 / bin_width - 1e-9));
  curve.bins.resize(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) curve.bins[k].discord_bin_center = std::min(1.0, (k + 0.5) * bin_width);

  for (const auto& r : records) {
    const double d = std::clamp(r.discord, 0.0, 1.0);
    const auto k = std::min(n_bins - 1, static_cast<std::size_t>(d / bin_width));
    BoundaryBin& b = curve.bins[k];
    if (!b.min_dg || r.dg_normalized < *b.min_dg) {
      b.min_dg = r.dg_normalized;
      b.state_id_min = r.id;
    }
    if (!b.max_dg || r.dg_normalized > *b.max_dg) {
      b.max_dg = r.dg_normalized;
      b.state_id_max = r.id;
    }
  }
  return curve;
}

void write_boundary_csv(std::ostream& os, const BoundaryCurve& curve) {
  os << "discord_bin_center,min_dg,max_dg,state_id_min,state_id_max\n";
  for (const auto& b : curve.bins) {
    os << format_number(b.discord_bin_center) << ',';
    if (b.min_dg)
      os << format_number(*b.min_dg) << ',' << format_number(*b.max_dg) << ',' << *b.state_id_min << ',' << *b.state_id_max;
    else
      os << "null,null,null,null";
    os << '\n';
  }
}

std::vector<SurfaceSample> conditional_entropy_surface(const DensityMatrix& rho, int n_theta, int n_phi, Subsystem measured) {
  if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("surface grid must be at least 1x1");
  const DensityMatrix state = measured == Subsystem::A ? swap_qubits(rho) : rho;
  const NormalForm nf = to_normal_form(state).nf;
  std::vector<double> theta(n_theta), phi(n_phi), values(static_cast<std::size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i) theta[i] = std::numbers::pi * i / n_theta;
  for (int j = 0; j < n_phi; ++j) phi[j] = 2.0 * std::numbers::pi * j / n_phi;
  kernels::conditional_entropy_grid(nf, theta, phi, values);
  std::vector<SurfaceSample> out;
  out.reserve(values.size());
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_phi; ++j) out.push_back({theta[i], phi[j], values[static_cast<std::size_t>(i) * n_phi + j]});
  return out;
}

void write_surface_csv(std::ostream& os, const std::vector<SurfaceSample>& surface) {
  os << "theta,phi,conditional_entropy\n";
  for (const auto& s : surface) os << format_number(s.theta) << ',' << format_number(s.phi) << ',' << format_number(s.value) << '\n';
}

}  // namespace qdiscord
