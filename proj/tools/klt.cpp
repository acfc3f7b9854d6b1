#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "klt/brownian.hpp"
#include "klt/data.hpp"
#include "klt/errors.hpp"
#include "klt/kernels.hpp"
#include "klt/kpca.hpp"
#include "klt/krr.hpp"
#include "klt/linalg.hpp"
#include "klt/pca.hpp"
#include "klt/rng.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace klt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;

struct RunReport {
    std::string command;
    json parameters = json::object();
    json metrics = json::object();
    std::vector<std::string> artifacts;
    std::uint64_t seed = 0;

    void write(const fs::path& out_dir) {
        json doc;
        doc["command"] = command;
        doc["parameters"] = parameters;
        doc["metrics"] = metrics;
        doc["artifacts"] = artifacts;
        doc["seed"] = seed;
        fs::path path = out_dir / "report.json";
        std::ofstream out(path);
        out << doc.dump(2) << "\n";
        if (!out) throw ParseError("cannot write " + path.string());
        std::printf("report: %s\n", path.string().c_str());
    }
};

fs::path prepare_out(const std::string& out) {
    if (out.empty()) throw InvalidInput("--out directory is required");
    fs::path dir(out);
    fs::create_directories(dir);
    return dir;
}

std::string save_csv(const fs::path& dir, const std::string& name, const Matrix& m,
                     const std::vector<std::string>& header = {}) {
    fs::path path = dir / name;
    data::write_csv(path.string(), m, header);
    return path.string();
}

// CSV convention is row = sample; models want columns = samples
Matrix load_samples(const std::string& path) { return data::read_csv(path).transpose(); }

kernels::KernelSpec make_kernel(const std::string& name, double sigma) {
    if (name == "gaussian") {
        if (!(sigma > 0.0))
            throw InvalidInput("gaussian kernel requires --sigma > 0");
        return kernels::KernelSpec::gaussian(sigma);
    }
    if (name == "exponential") return kernels::KernelSpec::exponential();
    if (name == "brownian-min" || name == "brownian_min")
        return kernels::KernelSpec::brownian_min();
    if (name == "linear") return kernels::KernelSpec::linear();
    throw InvalidInput("unknown kernel '" + name + "'");
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> pts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string cell =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            pts.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw InvalidInput("bad grid entry '" + cell + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return pts;
}

// best binary accuracy of a threshold on one score series, both orientations
double sweep_accuracy(const Vector& score, const std::vector<int>& labels) {
    double best = 0.0;
    const double n = static_cast<double>(score.size());
    for (std::size_t i = 0; i < score.size(); ++i) {
        double t = score[i];
        std::size_t hits = 0;
        for (std::size_t j = 0; j < score.size(); ++j)
            if ((score[j] > t ? 1 : 0) == labels[j]) ++hits;
        best = std::max({best, hits / n, 1.0 - hits / n});
    }
    return best;
}

double pearson(const Vector& a, const Vector& b) {
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        sa += (a[i] - ma) * (a[i] - ma);
        sb += (b[i] - mb) * (b[i] - mb);
    }
    if (sa <= 0.0 || sb <= 0.0) return 0.0;
    return sab / std::sqrt(sa * sb);
}

// least-squares fit of series ~ a sin(2t) + b cos(2t) + c, then the
// correlation between the fit and the series (period-pi sinusoid match)
double sinusoid_period_pi_corr(const Vector& angles, const Vector& series) {
    const std::size_t n = angles.size();
    Matrix ata(3, 3);
    Vector atb(3, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double f[3] = {std::sin(2.0 * angles[j]), std::cos(2.0 * angles[j]), 1.0};
        for (int r = 0; r < 3; ++r) {
            atb[r] += f[r] * series[j];
            for (int c = 0; c < 3; ++c) ata(r, c) += f[r] * f[c];
        }
    }
    auto eig = linalg::jacobi_eigh(ata);
    Vector coef(3, 0.0);
    for (int k = 0; k < 3; ++k) {
        if (eig.eigenvalues[k] <= 1e-12 * eig.eigenvalues[0]) continue;
        Vector v = eig.eigenvectors.col(k);
        double c = dot(v, atb) / eig.eigenvalues[k];
        for (int i = 0; i < 3; ++i) coef[i] += c * v[i];
    }
    Vector fit(n);
    for (std::size_t j = 0; j < n; ++j)
        fit[j] = coef[0] * std::sin(2.0 * angles[j]) + coef[1] * std::cos(2.0 * angles[j]) +
                 coef[2];
    return pearson(fit, series);
}

Matrix rank1_cloud(std::size_t dim, std::size_t count, std::uint64_t seed) {
    Xoshiro256pp gen(seed);
    Vector direction(dim), mean(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        direction[i] = 2.0 * gen.uniform01() - 1.0;
        mean[i] = 2.0 * gen.uniform01() - 1.0;
    }
    double nd = norm(direction);
    for (double& v : direction) v /= nd;
    Matrix pts(dim, count);
    for (std::size_t j = 0; j < count; ++j) {
        double t = 4.0 * gen.uniform01() - 2.0;
        for (std::size_t i = 0; i < dim; ++i) pts(i, j) = mean[i] + t * direction[i];
    }
    return pts;
}

struct PcaOptions {
    std::string input, gen, out;
    std::size_t n_shell = 200, n_ball = 50;
    std::uint64_t seed = 1;
    std::size_t components = 0; // 0 = all
};

int run_pca(const PcaOptions& opt) {
    fs::path dir = prepare_out(opt.out);

    Matrix x;
    if (!opt.gen.empty()) {
        if (opt.gen == "shell-ball") {
            x = data::gen_shell_ball(opt.n_shell, opt.n_ball, opt.seed).points;
        } else if (opt.gen == "rank1") {
            x = rank1_cloud(4, 60, opt.seed);
        } else {
            throw InvalidInput("unknown generator '" + opt.gen + "'");
        }
    } else if (!opt.input.empty()) {
        x = load_samples(opt.input);
    } else {
        throw InvalidInput("pca needs an input CSV or --gen");
    }

    const std::size_t d = x.rows();
    std::size_t l = opt.components == 0 ? d : opt.components;
    if (l < 1 || l > d)
        throw InvalidInput("--components must lie in [1, " + std::to_string(d) + "]");

    auto model = pca::fit(x);
    Matrix scores = pca::transform(model, x);
    Matrix recon = pca::reconstruct(model, scores, l);
    double residual = linalg::hs_norm(x - recon);

    RunReport report;
    report.command = "pca";
    report.seed = opt.seed;
    report.parameters["components"] = l;
    report.parameters["samples"] = x.cols();
    report.parameters["features"] = d;
    report.parameters["source"] = opt.gen.empty() ? opt.input : ("gen:" + opt.gen);

    double eig_sum = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        report.metrics["eigenvalue_" + std::to_string(k + 1)] = model.eigenvalues[k];
        eig_sum += model.eigenvalues[k];
    }
    report.metrics["eigenvalue_sum"] = eig_sum;
    report.metrics["residual_hs2"] = residual * residual;

    report.artifacts.push_back(save_csv(dir, "scores.csv", scores.transpose()));
    report.artifacts.push_back(save_csv(dir, "reconstruction.csv", recon.transpose()));
    Matrix mean_row(1, d, model.mean);
    report.artifacts.push_back(save_csv(dir, "mean.csv", mean_row));
    report.artifacts.push_back(save_csv(dir, "feature_matrix.csv", model.feature_matrix));
    report.write(dir);
    return kExitOk;
}

struct KpcaOptions {
    std::string input, gen, out;
    std::string kernel = "gaussian";
    double sigma = 0.0;
    std::size_t components = 2;
    std::size_t n_shell = 200, n_ball = 50;
    std::size_t n_images = 36, resolution = 64;
    std::uint64_t seed = 1;
    bool raw_pce = false;
};

int run_kpca(const KpcaOptions& opt) {
    fs::path dir = prepare_out(opt.out);
    auto kernel = make_kernel(opt.kernel, opt.sigma);

    Matrix x;
    std::vector<int> labels;
    Vector angles;
    if (opt.gen == "shell-ball") {
        auto cloud = data::gen_shell_ball(opt.n_shell, opt.n_ball, opt.seed);
        x = cloud.points;
        labels = cloud.labels;
    } else if (opt.gen == "ellipses") {
        auto stack = data::gen_rotated_ellipses(opt.n_images, opt.resolution);
        x = stack.as_matrix();
        angles = stack.angles;
    } else if (!opt.gen.empty()) {
        throw InvalidInput("unknown generator '" + opt.gen + "'");
    } else if (!opt.input.empty()) {
        x = load_samples(opt.input);
    } else {
        throw InvalidInput("kpca needs an input CSV or --gen");
    }

    auto model = kpca::fit(x, kernel, opt.components);

    Matrix embedding(x.cols(), model.k_retained);
    if (opt.raw_pce) {
        for (std::size_t j = 0; j < x.cols(); ++j)
            embedding.set_row(j, kpca::project_raw(model, x.col(j)));
    } else {
        embedding = kpca::embed_dataset(model);
    }

    RunReport report;
    report.command = "kpca";
    report.seed = opt.seed;
    report.parameters["kernel"] = kernel.name();
    if (kernel.kind == kernels::KernelSpec::Kind::gaussian)
        report.parameters["sigma"] = opt.sigma;
    report.parameters["components_requested"] = opt.components;
    report.parameters["samples"] = x.cols();
    report.parameters["source"] = opt.gen.empty() ? opt.input : ("gen:" + opt.gen);
    report.parameters["raw_pce"] = opt.raw_pce ? "true" : "false";

    report.metrics["k_retained"] = model.k_retained;
    report.metrics["rank"] = model.rank();
    report.metrics["truncated"] = model.truncated ? 1 : 0;
    for (std::size_t k = 0; k < model.k_retained; ++k)
        report.metrics["d2_" + std::to_string(k + 1)] = model.d[k] * model.d[k];

    // embedding CSV: one row per sample, labels/angles appended when present
    std::vector<std::string> header;
    for (std::size_t k = 0; k < model.k_retained; ++k)
        header.push_back("pc" + std::to_string(k + 1));
    Matrix table = embedding;
    if (!labels.empty() || !angles.empty()) {
        table = Matrix(embedding.rows(), embedding.cols() + 1);
        for (std::size_t i = 0; i < embedding.rows(); ++i) {
            for (std::size_t j = 0; j < embedding.cols(); ++j) table(i, j) = embedding(i, j);
            table(i, embedding.cols()) =
                labels.empty() ? angles[i] : static_cast<double>(labels[i]);
        }
        header.push_back(labels.empty() ? "angle" : "label");
    }
    report.artifacts.push_back(save_csv(dir, "embedding.csv", table, header));

    if (!labels.empty()) {
        double best = 0.0;
        for (std::size_t c = 0; c < std::min<std::size_t>(2, model.k_retained); ++c) {
            double acc = sweep_accuracy(embedding.col(c), labels);
            report.metrics["accuracy_pc" + std::to_string(c + 1)] = acc;
            best = std::max(best, acc);
        }
        report.metrics["separability_accuracy"] = best;
    }
    if (!angles.empty() && model.k_retained >= 1)
        report.metrics["sinusoid_corr_pc1"] =
            std::abs(sinusoid_period_pi_corr(angles, embedding.col(0)));

    report.write(dir);
    return kExitOk;
}

struct KrrOptions {
    std::string input, predict, out;
    std::string kernel = "gaussian";
    double sigma = 0.0;
    double beta = -1.0;
};

int run_krr(const KrrOptions& opt) {
    fs::path dir = prepare_out(opt.out);
    if (!(opt.beta > 0.0)) throw InvalidInput("--beta must be positive");
    auto kernel = make_kernel(opt.kernel, opt.sigma);

    Matrix table = data::read_csv(opt.input);
    if (table.cols() < 2)
        throw ParseError("krr input needs at least one feature column plus y");
    const std::size_t m = table.rows();
    const std::size_t d = table.cols() - 1;
    Matrix points(d, m);
    Vector y(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < d; ++j) points(j, i) = table(i, j);
        y[i] = table(i, d);
    }

    auto model = krr::fit(points, y, opt.beta, kernel);

    RunReport report;
    report.command = "krr";
    report.parameters["kernel"] = kernel.name();
    if (kernel.kind == kernels::KernelSpec::Kind::gaussian)
        report.parameters["sigma"] = opt.sigma;
    report.parameters["beta"] = opt.beta;
    report.parameters["samples"] = m;
    report.parameters["source"] = opt.input;

    double rmax = 0.0, r2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double r = std::abs(model.fitted[i] - y[i]);
        rmax = std::max(rmax, r);
        r2 += r * r;
    }
    report.metrics["objective_at_fit"] =
        krr::objective(points, y, opt.beta, kernel, model.coefficients);
    Vector zero(m, 0.0);
    report.metrics["objective_at_zero"] = krr::objective(points, y, opt.beta, kernel, zero);
    report.metrics["train_residual_max"] = rmax;
    report.metrics["train_residual_rmse"] = std::sqrt(r2 / static_cast<double>(m));

    report.artifacts.push_back(
        save_csv(dir, "coefficients.csv", Matrix(m, 1, model.coefficients)));
    report.artifacts.push_back(save_csv(dir, "fitted.csv", Matrix(m, 1, model.fitted)));

    if (!opt.predict.empty()) {
        Matrix q = load_samples(opt.predict); // d x k
        if (q.rows() != d)
            throw ParseError("prediction points have " + std::to_string(q.rows()) +
                             " features, expected " + std::to_string(d));
        Matrix pred(q.cols(), 1);
        for (std::size_t j = 0; j < q.cols(); ++j) pred(j, 0) = krr::predict(model, q.col(j));
        report.artifacts.push_back(save_csv(dir, "predictions.csv", pred));
    }
    report.write(dir);
    return kExitOk;
}

struct PowerOptions {
    std::string matrix, grid, out;
    std::size_t steps = 50;
};

int run_power(const PowerOptions& opt) {
    fs::path dir = prepare_out(opt.out);

    Matrix g;
    if (!opt.grid.empty()) {
        g = brownian::min_kernel_matrix(brownian::BrownianGrid(parse_grid(opt.grid)));
    } else if (!opt.matrix.empty()) {
        g = data::read_csv(opt.matrix); // direct matrix layout, not samples
    } else {
        throw InvalidInput("power needs --matrix or --brownian-grid");
    }

    Vector x0(g.rows(), 0.0);
    x0[0] = 1.0; // e_1, the worked-example start
    auto res = linalg::power_iteration(g, x0, opt.steps);
    auto oracle = linalg::jacobi_eigh(g);

    for (std::size_t k = 0; k < res.ratio_history.size(); ++k)
        std::printf("step %zu: ratio %.10f\n", k + 1, res.ratio_history[k]);
    std::printf("power-iteration estimate: %.10f\n", res.lambda_est);
    std::printf("jacobi oracle lambda1:    %.10f\n", oracle.eigenvalues[0]);

    RunReport report;
    report.command = "power";
    report.parameters["steps"] = opt.steps;
    report.parameters["source"] = opt.grid.empty() ? opt.matrix : ("grid:" + opt.grid);
    report.metrics["lambda_est"] = res.lambda_est;
    report.metrics["lambda_oracle"] = oracle.eigenvalues[0];
    report.metrics["abs_error"] = std::abs(res.lambda_est - oracle.eigenvalues[0]);

    Matrix ratios(res.ratio_history.size(), 2);
    for (std::size_t k = 0; k < res.ratio_history.size(); ++k) {
        ratios(k, 0) = static_cast<double>(k + 1);
        ratios(k, 1) = res.ratio_history[k];
    }
    report.artifacts.push_back(save_csv(dir, "ratios.csv", ratios, {"step", "ratio"}));

    Matrix pair(g.rows(), 2);
    for (std::size_t i = 0; i < g.rows(); ++i) {
        pair(i, 0) = res.vec_est[i];
        pair(i, 1) = oracle.eigenvectors(i, 0);
    }
    report.artifacts.push_back(
        save_csv(dir, "eigenvector.csv", pair, {"power_iteration", "jacobi"}));
    report.write(dir);
    return kExitOk;
}

struct BrownianOptions {
    std::string grid = "1,2,3";
    std::string checks = "all";
    std::string out;
    std::size_t paths = 100000;
    std::uint64_t seed = 1;
};

int run_brownian(const BrownianOptions& opt) {
    fs::path dir = prepare_out(opt.out);
    if (opt.checks != "all" && opt.checks != "exact" && opt.checks != "mc")
        throw InvalidInput("--checks must be all, exact, or mc");

    brownian::BrownianGrid grid(parse_grid(opt.grid));
    const std::size_t n = grid.size();

    RunReport report;
    report.command = "brownian";
    report.seed = opt.seed;
    report.parameters["grid"] = opt.grid;
    report.parameters["paths"] = opt.paths;
    report.parameters["checks"] = opt.checks;

    bool failed = false;
    auto note = [&](const std::string& name, double value, bool ok) {
        report.metrics[name] = value;
        std::printf("%-34s %14.6e  %s\n", name.c_str(), value, ok ? "ok" : "FAIL");
        if (!ok) failed = true;
    };

    if (opt.checks != "mc") {
        Matrix k = brownian::min_kernel_matrix(grid);
        Matrix a = brownian::cholesky_factor(grid);
        double fact_rel = linalg::hs_norm(a * a.transpose() - k) / linalg::hs_norm(k);
        note("factorization_rel_residual", fact_rel, fact_rel < 1e-12);

        auto eig = linalg::jacobi_eigh(k);
        double prod = 1.0;
        for (double lam : eig.eigenvalues) prod *= lam;
        double det = brownian::det_closed_form(grid);
        double det_rel = std::abs(prod - det) / det;
        note("det_rel_error", det_rel, det_rel < 1e-8);
    }

    if (opt.checks != "exact") {
        auto ens = brownian::sample_paths(grid, opt.paths, opt.seed);

        for (std::size_t k = 0; k < n; ++k) {
            auto cf = brownian::mc_char_function(ens, k);
            double sig = cf.sigma_from({std::exp(-0.5 * grid[k]), 0.0});
            note("char_function_sigma_t" + std::to_string(k + 1), sig, sig < 5.0);
        }
        if (n >= 2) {
            auto pair = brownian::mc_char_function_pair(ens, 0, 1);
            double sig = pair.sigma_from({std::exp(-0.5 * (grid[1] - grid[0])), 0.0});
            note("char_pair_sigma", sig, sig < 5.0);
        }
        for (std::size_t order : {2, 4}) {
            auto mom = brownian::mc_moment(ens, 0, order);
            double target = (order == 2 ? 1.0 : 3.0) * std::pow(grid[0], order / 2.0);
            double sig = mom.sigma_from(target);
            note("moment" + std::to_string(order) + "_sigma", sig, sig < 5.0);
        }
        if (n >= 2) {
            for (std::size_t deg = 0; deg <= 2; ++deg) {
                auto tc = brownian::mc_transform_monomial(ens, 0, 1, deg);
                note("transform_n" + std::to_string(deg) + "_sigma", tc.sigma,
                     tc.sigma < 5.0);
            }
        }
        if (n >= 3) {
            auto lhs = brownian::mc_char_function_pair(ens, 0, 2);
            auto rhs = brownian::mc_char_function_pair(ens, 0, 1);
            double factor = std::exp(-0.5 * (grid[2] - grid[1]));
            double sig = std::abs(lhs.mean - factor * rhs.mean) /
                         (lhs.se() + factor * rhs.se());
            note("semigroup_sigma", sig, sig < 5.0);
        }
    }

    report.metrics["checks_passed"] = failed ? 0 : 1;
    report.write(dir);
    return failed ? kExitCheckFailed : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Karhunen-Loeve / kernel PCA toolkit"};
    app.require_subcommand(1);

    PcaOptions pca_opt;
    auto* cmd_pca = app.add_subcommand("pca", "linear PCA transform and reconstruction");
    cmd_pca->add_option("input", pca_opt.input, "input CSV (row = sample)");
    cmd_pca->add_option("--gen", pca_opt.gen, "generator: shell-ball or rank1");
    cmd_pca->add_option("--n-shell", pca_opt.n_shell);
    cmd_pca->add_option("--n-ball", pca_opt.n_ball);
    cmd_pca->add_option("--seed", pca_opt.seed);
    cmd_pca->add_option("--components", pca_opt.components,
                        "retained components (default all)");
    cmd_pca->add_option("--out", pca_opt.out)->required();

    KpcaOptions kpca_opt;
    auto* cmd_kpca = app.add_subcommand("kpca", "kernel PCA embedding");
    cmd_kpca->add_option("input", kpca_opt.input, "input CSV (row = sample)");
    cmd_kpca->add_option("--gen", kpca_opt.gen, "generator: shell-ball or ellipses");
    cmd_kpca->add_option("--kernel", kpca_opt.kernel,
                         "gaussian | exponential | brownian-min | linear");
    cmd_kpca->add_option("--sigma", kpca_opt.sigma, "gaussian width parameter");
    cmd_kpca->add_option("--components", kpca_opt.components);
    cmd_kpca->add_option("--n-shell", kpca_opt.n_shell);
    cmd_kpca->add_option("--n-ball", kpca_opt.n_ball);
    cmd_kpca->add_option("--n-images", kpca_opt.n_images);
    cmd_kpca->add_option("--resolution", kpca_opt.resolution);
    cmd_kpca->add_option("--seed", kpca_opt.seed);
    cmd_kpca->add_flag("--raw-pce", kpca_opt.raw_pce,
                       "project with the uncentered kernel column");
    cmd_kpca->add_option("--out", kpca_opt.out)->required();

    KrrOptions krr_opt;
    auto* cmd_krr = app.add_subcommand("krr", "kernel ridge regression");
    cmd_krr->add_option("input", krr_opt.input, "CSV with features then a final y column")
        ->required();
    cmd_krr->add_option("--kernel", krr_opt.kernel);
    cmd_krr->add_option("--sigma", krr_opt.sigma);
    cmd_krr->add_option("--beta", krr_opt.beta, "ridge weight")->required();
    cmd_krr->add_option("--predict", krr_opt.predict, "CSV of points to predict");
    cmd_krr->add_option("--out", krr_opt.out)->required();

    PowerOptions power_opt;
    auto* cmd_power = app.add_subcommand("power", "power-iteration eigenvalue estimate");
    cmd_power->add_option("--matrix", power_opt.matrix, "symmetric matrix CSV");
    cmd_power->add_option("--brownian-grid", power_opt.grid, "grid like 1,2,3");
    cmd_power->add_option("--steps", power_opt.steps);
    cmd_power->add_option("--out", power_opt.out)->required();

    BrownianOptions bm_opt;
    auto* cmd_bm = app.add_subcommand("brownian", "Brownian kernel checks");
    cmd_bm->add_option("--grid", bm_opt.grid, "grid like 1,2,3");
    cmd_bm->add_option("--paths", bm_opt.paths);
    cmd_bm->add_option("--seed", bm_opt.seed);
    cmd_bm->add_option("--checks", bm_opt.checks, "all | exact | mc");
    cmd_bm->add_option("--out", bm_opt.out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cmd_pca->parsed()) return run_pca(pca_opt);
        if (cmd_kpca->parsed()) return run_kpca(kpca_opt);
        if (cmd_krr->parsed()) return run_krr(krr_opt);
        if (cmd_power->parsed()) return run_power(power_opt);
        if (cmd_bm->parsed()) return run_brownian(bm_opt);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    } catch (const InvalidInput& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCheckFailed;
    }
    return kExitUsage;
}
