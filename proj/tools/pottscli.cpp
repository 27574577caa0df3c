// Command-line driver for the Potts reconstruction library.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "potts/algo1.hpp"
#include "potts/algo2.hpp"
#include "potts/eval.hpp"
#include "potts/io.hpp"
#include "potts/parallel.hpp"
#include "potts/potts1d.hpp"
#include "potts/projection.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitNoConverge = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct CommonOpts {
    std::string input;
    std::string output_dir = ".";
    double gamma = 0.1;
    double epsilon = 0.0;  // 0 -> 0.01 * ||f||
    std::string coupling = "full";
    std::string directions = "compass4";
    double lambda = -1.0;  // -1 -> per-command preset
    int algo = 2;
    std::uint64_t seed = 0;
    int max_iters = 0;   // 0 -> per-algorithm default
    int inner_max = 0;   // 0 -> Algorithm 2 default
    bool strict = false;
    int threads = 0;
    double noise_sigma = 0.0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_input) {
    auto* in = cmd->add_option("--input", o.input, "input image (PGM or raw float grid)");
    if (needs_input) in->required();
    cmd->add_option("--output-dir", o.output_dir, "directory for result files");
    cmd->add_option("--gamma", o.gamma, "jump penalty");
    cmd->add_option("--epsilon", o.epsilon, "coupling tolerance (0 = 0.01*||f||)");
    cmd->add_option("--coupling", o.coupling)->check(CLI::IsMember({"full", "cyclic"}));
    cmd->add_option("--directions", o.directions)->check(CLI::IsMember({"compass4", "knight8"}));
    cmd->add_option("--lambda", o.lambda, "step relaxation (default: per-command preset)");
    cmd->add_option("--algo", o.algo)->check(CLI::IsMember({1, 2}));
    cmd->add_option("--seed", o.seed, "noise seed");
    cmd->add_option("--max-iters", o.max_iters, "iteration cap (0 = default)");
    cmd->add_option("--inner-max", o.inner_max, "inner iteration cap for Algorithm 2 (0 = default)");
    cmd->add_flag("--strict", o.strict, "exact step sizes (Algorithm 1 descent mode)");
    cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    cmd->add_option("--noise-sigma", o.noise_sigma, "Gaussian noise added to the data");
}

potts::Image read_image(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw std::runtime_error("cannot open: " + path);
    char magic[8] = {};
    probe.read(magic, 8);
    probe.close();
    if (magic[0] == 'P' && magic[1] == '5') return potts::read_pgm(path);
    return potts::read_grid(path);
}

potts::CouplingKind coupling_kind(const CommonOpts& o) {
    return o.coupling == "cyclic" ? potts::CouplingKind::Cyclic : potts::CouplingKind::Full;
}

potts::DirectionSystem direction_system(const CommonOpts& o) {
    return o.directions == "knight8" ? potts::DirectionSystem::Knight8
                                     : potts::DirectionSystem::Compass4;
}

std::filesystem::path out_path(const CommonOpts& o, const std::string& name) {
    std::filesystem::create_directories(o.output_dir);
    return std::filesystem::path(o.output_dir) / name;
}

void write_manifest(const CommonOpts& o, const std::map<std::string, std::string>& extra) {
    std::ofstream out(out_path(o, "manifest.txt"));
    out.precision(17);
    out << "input=" << o.input << "\n";
    out << "gamma=" << o.gamma << "\n";
    out << "epsilon=" << o.epsilon << "\n";
    out << "coupling=" << o.coupling << "\n";
    out << "directions=" << o.directions << "\n";
    out << "lambda=" << o.lambda << "\n";
    out << "algo=" << o.algo << "\n";
    out << "seed=" << o.seed << "\n";
    out << "max_iters=" << o.max_iters << "\n";
    out << "strict=" << (o.strict ? 1 : 0) << "\n";
    out << "threads=" << o.threads << "\n";
    out << "noise_sigma=" << o.noise_sigma << "\n";
    for (const auto& [k, v] : extra) out << k << "=" << v << "\n";
}

void write_metrics(const CommonOpts& o, const std::map<std::string, double>& metrics) {
    std::ofstream out(out_path(o, "metrics.txt"));
    out.precision(17);
    for (const auto& [k, v] : metrics) {
        out << k << "=" << v << "\n";
        std::cout << k << "=" << v << "\n";
    }
}

/// mssim needs at least one 11x11 window; skip the metric for tiny images.
void add_mssim(std::map<std::string, double>* metrics, const std::string& key,
               const potts::Image& reference, const potts::Image& candidate) {
    if (reference.width >= 11 && reference.height >= 11)
        (*metrics)[key] = potts::mssim(reference, candidate);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Runs the selected algorithm end to end and writes the shared artifacts.
/// Returns kExitOk or kExitNoConverge.
int run_reconstruction(const potts::LinearOperator& op, const potts::DataVector& f,
                       const CommonOpts& o, double lambda_preset,
                       std::map<std::string, std::string>& manifest_extra, potts::Image* out_img,
                       potts::Partition* out_part) {
    const double lambda = o.lambda >= 0.0 ? o.lambda : lambda_preset;
    const auto model = potts::build_direction_model(direction_system(o));
    const potts::CouplingScheme scheme(coupling_kind(o), model.size());

    bool converged = false;
    std::vector<std::vector<double>> trace_rows;
    std::vector<std::string> trace_header;

    if (o.algo == 1) {
        potts::Algo1Config cfg;
        cfg.gamma = o.gamma;
        cfg.scheme = scheme;
        cfg.model = model;
        cfg.lambda = lambda;
        cfg.strict_mode = o.strict;
        cfg.epsilon = o.epsilon > 0.0 ? o.epsilon : 0.01 * potts::norm2(f.values);
        if (o.max_iters > 0) cfg.max_iters = o.max_iters;
        auto [stack, trace] = potts::run_algo1(op, f, cfg);
        converged = trace.converged;
        manifest_extra["derived_rho"] = fmt(trace.rho);
        manifest_extra["derived_l"] = fmt(trace.l);
        manifest_extra["effective_epsilon"] = fmt(cfg.epsilon);
        trace_header = {"n", "energy", "max_pair_distance", "rel_change_u1", "rel_change_u2"};
        for (std::size_t n = 0; n < trace.records.size(); ++n) {
            const auto& r = trace.records[n];
            trace_rows.push_back({static_cast<double>(n), r.energy, r.max_pair_distance,
                                  r.rel_change_u1, r.rel_change_u2});
        }
        auto [img, part] = potts::project(stack, model);
        *out_img = std::move(img);
        *out_part = std::move(part);
    } else {
        potts::Algo2Config cfg;
        cfg.gamma = o.gamma;
        cfg.scheme = scheme;
        cfg.model = model;
        cfg.lambda = lambda;
        if (o.max_iters > 0) cfg.outer_max = o.max_iters;
        if (o.inner_max > 0) cfg.inner_max = o.inner_max;
        auto res = potts::run_algo2(op, f, cfg);
        converged = res.trace.converged;
        manifest_extra["derived_t"] = fmt(res.trace.t);
        trace_header = {"k", "n_inner", "rho", "delta", "energy", "max_pair_distance"};
        for (const auto& r : res.trace.records)
            trace_rows.push_back({static_cast<double>(r.k), static_cast<double>(r.n_inner), r.rho,
                                  r.delta, r.energy, r.max_pair_distance});
        *out_img = std::move(res.image);
        *out_part = std::move(res.partition);
    }

    manifest_extra["effective_lambda"] = fmt(lambda);
    manifest_extra["norm_a"] = fmt(op.norm());
    potts::write_csv(out_path(o, "trace.csv").string(), trace_header, trace_rows);
    potts::write_grid(out_path(o, "reconstruction.f64").string(), *out_img);
    potts::write_pgm(out_path(o, "reconstruction.pgm").string(), *out_img);
    potts::write_label_pgm(out_path(o, "labels.pgm").string(), out_part->labels, out_part->width,
                           out_part->height);
    return converged ? kExitOk : kExitNoConverge;
}

int cmd_deblur(const CommonOpts& o, const std::string& kernel, double blur_sigma,
               int motion_length) {
    const potts::Image input = read_image(o.input);
    std::unique_ptr<potts::LinearOperator> op;
    double preset = 0.0;
    if (kernel == "gaussian") {
        op = potts::gaussian_blur_operator(input.width, input.height, blur_sigma);
        preset = o.algo == 1 ? potts::kLambdaAlgo1Deblur : potts::kLambdaGaussianBlur;
    } else if (kernel == "motion") {
        op = potts::motion_blur_operator(input.width, input.height, motion_length);
        preset = o.algo == 1 ? potts::kLambdaAlgo1Deblur : potts::kLambdaMotionBlur;
    } else {
        op = potts::identity_operator(input.width, input.height);
        preset = o.algo == 1 ? potts::kLambdaAlgo1Deblur : potts::kLambdaSegmentation;
    }

    potts::DataVector f = op->apply(input);
    if (o.noise_sigma > 0.0) f = potts::add_noise(f, {o.noise_sigma, o.seed});
    potts::write_grid(out_path(o, "data.f64").string(),
                      potts::Image(f.cols, f.rows, f.values));

    std::map<std::string, std::string> extra;
    extra["kernel"] = kernel;
    extra["blur_sigma"] = fmt(blur_sigma);
    extra["motion_length"] = fmt(motion_length);
    potts::Image img;
    potts::Partition part;
    const int rc = run_reconstruction(*op, f, o, preset, extra, &img, &part);
    write_manifest(o, extra);
    std::map<std::string, double> metrics{{"segments", static_cast<double>(part.segment_count)}};
    add_mssim(&metrics, "mssim", input, img);
    write_metrics(o, metrics);
    return rc;
}

int cmd_radon(const CommonOpts& o, int angles, int phantom_n) {
    potts::Image input = o.input.empty() ? potts::shepp_logan(phantom_n) : read_image(o.input);
    potts::RadonGeometry geom;
    geom.num_angles = angles;
    geom.num_detectors = potts::default_detector_count(input.width, input.height);
    auto op = potts::radon_operator(input.width, input.height, geom);

    potts::DataVector sino = op->apply(input);
    if (o.noise_sigma > 0.0) sino = potts::add_noise(sino, {o.noise_sigma, o.seed});
    potts::write_grid(out_path(o, "sinogram.f64").string(),
                      potts::Image(sino.cols, sino.rows, sino.values));

    const potts::Image fbp_img = potts::fbp(sino, geom, input.width, input.height);
    potts::write_grid(out_path(o, "fbp.f64").string(), fbp_img);
    potts::write_pgm(out_path(o, "fbp.pgm").string(), fbp_img);

    std::map<std::string, std::string> extra;
    extra["angles"] = fmt(angles);
    extra["detectors"] = fmt(geom.num_detectors);
    potts::Image img;
    potts::Partition part;
    const int rc = run_reconstruction(*op, sino, o, potts::kLambdaRadon, extra, &img, &part);
    write_manifest(o, extra);
    std::map<std::string, double> metrics{{"segments", static_cast<double>(part.segment_count)}};
    add_mssim(&metrics, "mssim", input, img);
    add_mssim(&metrics, "mssim_fbp", input, fbp_img);
    write_metrics(o, metrics);
    return rc;
}

int cmd_segment(const CommonOpts& o) {
    const potts::Image input = read_image(o.input);
    auto op = potts::identity_operator(input.width, input.height);
    potts::DataVector f(input.height, input.width, input.values);
    if (o.noise_sigma > 0.0) f = potts::add_noise(f, {o.noise_sigma, o.seed});

    std::map<std::string, std::string> extra;
    potts::Image img;
    potts::Partition part;
    const int rc =
        run_reconstruction(*op, f, o, potts::kLambdaSegmentation, extra, &img, &part);
    write_manifest(o, extra);
    std::map<std::string, double> metrics{{"segments", static_cast<double>(part.segment_count)}};
    add_mssim(&metrics, "mssim", input, img);
    write_metrics(o, metrics);
    return rc;
}

int cmd_potts1d(const std::string& input, double gamma) {
    std::vector<double> signal;
    try {
        signal = potts::read_csv_signal(input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    const potts::Segmentation1D seg = potts::solve_univariate(signal, gamma);
    std::cout.precision(17);
    std::cout << "breakpoints=";
    for (std::size_t k = 0; k + 1 < seg.ends.size(); ++k)
        std::cout << (k ? "," : "") << seg.ends[k];
    std::cout << " levels=";
    for (std::size_t k = 0; k < seg.levels.size(); ++k)
        std::cout << (k ? "," : "") << seg.levels[k];
    std::cout << " energy=" << seg.energy << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Piecewise-constant (Potts) reconstruction for linear inverse problems"};
    app.require_subcommand(1);

    CommonOpts deblur_opts, radon_opts, segment_opts;
    std::string kernel = "gaussian";
    double blur_sigma = 3.0;
    int motion_length = 9;
    int angles = 25;
    int phantom_n = 128;
    std::string signal_path;
    double signal_gamma = 1.0;

    auto* deblur = app.add_subcommand("deblur", "joint deblurring and segmentation");
    add_common(deblur, deblur_opts, true);
    deblur->add_option("--kernel", kernel)->check(CLI::IsMember({"gaussian", "motion", "identity"}));
    deblur->add_option("--blur-sigma", blur_sigma, "Gaussian kernel standard deviation");
    deblur->add_option("--motion-length", motion_length, "motion blur length in pixels");

    auto* radon = app.add_subcommand("radon", "tomographic reconstruction from Radon data");
    add_common(radon, radon_opts, false);
    radon->add_option("--angles", angles, "number of projection angles");
    radon->add_option("--phantom-size", phantom_n, "phantom resolution when no input is given");

    auto* segment = app.add_subcommand("segment", "piecewise-constant segmentation (A = id)");
    add_common(segment, segment_opts, true);

    auto* potts1d = app.add_subcommand("potts1d", "univariate Potts solve of a CSV signal");
    potts1d->add_option("--input", signal_path, "CSV of reals")->required();
    potts1d->add_option("--gamma", signal_gamma, "jump penalty");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (deblur->parsed()) {
            potts::set_thread_count(deblur_opts.threads);
            return cmd_deblur(deblur_opts, kernel, blur_sigma, motion_length);
        }
        if (radon->parsed()) {
            potts::set_thread_count(radon_opts.threads);
            return cmd_radon(radon_opts, angles, phantom_n);
        }
        if (segment->parsed()) {
            potts::set_thread_count(segment_opts.threads);
            return cmd_segment(segment_opts);
        }
        if (potts1d->parsed()) return cmd_potts1d(signal_path, signal_gamma);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
