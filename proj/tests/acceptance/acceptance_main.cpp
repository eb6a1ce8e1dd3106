// Acceptance suite. Runs every release criterion at its pinned tolerance and
// prints one [PASS]/[FAIL] line per criterion. Exits nonzero if any fail.
//
// Usage: cdice_acceptance <path-to-cli-binary>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <cdice/cdice.hpp>

#include "../support/generators.hpp"
#include "../support/reference_cdc.hpp"

using namespace cdice;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

class Criterion {
public:
    explicit Criterion(std::string name) : name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

    void expect(bool ok, const std::string& detail) {
        if (!ok && first_failure_.empty()) first_failure_ = detail;
        ok_ = ok_ && ok;
    }

    double elapsed_s() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    void finish(const std::string& note = "") {
        std::ostringstream line;
        line << (ok_ ? "[PASS] " : "[FAIL] ") << name_;
        if (!note.empty()) line << " (" << note << ")";
        if (!ok_) line << " :: " << first_failure_;
        std::cout << line.str() << "\n";
        if (!ok_) ++g_failures;
    }

private:
    std::string name_;
    std::chrono::steady_clock::time_point start_;
    bool ok_ = true;
    std::string first_failure_;
};

std::string fmt(double v) { return format_full(v); }

struct CliResult {
    int code = -1;
    std::string output;
};

CliResult run_cli(const std::string& cli, const std::vector<std::string>& args, const fs::path& capture) {
    std::string cmd = "'" + cli + "'";
    for (const auto& a : args) cmd += " '" + a + "'";
    cmd += " > '" + capture.string() + "' 2>&1";
    const int rc = std::system(cmd.c_str());
    CliResult r;
    if (WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
    std::ifstream in(capture, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------

void criterion_1_oracle_equivalence() {
    Criterion c("1. cDC matches the independent reference on 1000 randomized volumes (<= 1e-12)");
    testsupport::RandomEngine rng(20260811);
    int compared = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        const Dims dims = testsupport::small_dims(rng, 16);
        const double p_one = 0.05 + 0.2 * static_cast<double>(iter % 5);
        const BinaryMask a = testsupport::random_mask(rng, dims, p_one);
        const ProbMap b = testsupport::random_probmap(rng, dims, static_cast<testsupport::MapKind>(iter % 3));

        const MetricReport r = continuous_dice(a, b);
        if (r.both_empty) {
            // The naive reference divides 0 by 0 here; the library pins the
            // convention value 1 instead.
            c.expect(r.value == 1.0, "both-empty convention violated");
            continue;
        }
        const double expected = testsupport::reference_continuous_dice(a.data(), b.data());
        const double diff = std::abs(r.value - expected);
        c.expect(std::isfinite(expected) && diff <= 1e-12,
                 "iter " + std::to_string(iter) + ": |" + fmt(r.value) + " - " + fmt(expected) + "| = " + fmt(diff));
        ++compared;
    }
    c.expect(compared >= 990, "too few comparable draws: " + std::to_string(compared));
    const double secs = c.elapsed_s();
    c.expect(secs < 10.0, "runtime " + format_short(secs) + "s exceeds 10s");
    c.finish(std::to_string(compared) + " compared, " + format_short(secs) + "s");
}

void criterion_2_binary_consistency() {
    Criterion c("2. cDC equals DC on 500 random binary pairs (<= 1e-12)");
    testsupport::RandomEngine rng(1602);
    for (int iter = 0; iter < 500; ++iter) {
        const Dims dims = testsupport::small_dims(rng, 16);
        const BinaryMask a = testsupport::random_mask(rng, dims, 0.1 + 0.2 * (iter % 4));
        const BinaryMask b = testsupport::random_mask(rng, dims, 0.1 + 0.2 * ((iter + 2) % 4));
        const double dc = dice_binary(a, b).value;
        const double cdc = continuous_dice(a, ProbMap(ScalarVolume(b.volume()))).value;
        c.expect(std::abs(cdc - dc) <= 1e-12,
                 "iter " + std::to_string(iter) + ": dc " + fmt(dc) + " vs cdc " + fmt(cdc));
    }
    c.finish();
}

void criterion_3_property_one() {
    Criterion c("3. cDC = 1 exactly at complete overlap, below it otherwise, always in [0, 1]");
    testsupport::RandomEngine rng(31337);

    // (a) 200 constructed complete-overlap cases.
    for (int iter = 0; iter < 200; ++iter) {
        const auto [a, b] = testsupport::complete_overlap_pair(rng);
        const double cdc = continuous_dice(a, b).value;
        c.expect(std::abs(cdc - 1.0) <= 1e-12, "complete overlap iter " + std::to_string(iter) + ": " + fmt(cdc));
    }

    // (b) 200 incomplete cases: one extra or one missing support voxel.
    std::uniform_real_distribution<double> strong(0.25, 1.0);
    for (int iter = 0; iter < 200; ++iter) {
        for (;;) {
            auto [a, b] = testsupport::complete_overlap_pair(rng);
            std::vector<double> data(b.data().begin(), b.data().end());
            const auto adata = a.data();
            bool changed = false;
            if (iter % 2 == 0) {
                for (std::size_t i = 0; i < adata.size(); ++i)
                    if (adata[i] == 0.0) {  // extra prediction support outside the truth
                        data[i] = strong(rng);
                        changed = true;
                        break;
                    }
            } else {
                for (std::size_t i = 0; i < adata.size(); ++i)
                    if (adata[i] == 1.0) {  // missing prediction support inside the truth
                        data[i] = 0.0;
                        changed = true;
                        break;
                    }
            }
            if (!changed) continue;
            const double cdc =
                continuous_dice(a, ProbMap(ScalarVolume(b.dims(), b.spacing(), std::move(data)))).value;
            c.expect(cdc < 1.0 - 1e-9, "incomplete overlap iter " + std::to_string(iter) + ": " + fmt(cdc));
            break;
        }
    }

    // (c) 1000 random pairs stay inside [0, 1].
    for (int iter = 0; iter < 1000; ++iter) {
        const Dims dims = testsupport::small_dims(rng, 16);
        const BinaryMask a = testsupport::random_mask(rng, dims, 0.1 + 0.2 * (iter % 5));
        const ProbMap b = testsupport::random_probmap(rng, dims, static_cast<testsupport::MapKind>(iter % 3));
        const double cdc = continuous_dice(a, b).value;
        c.expect(0.0 <= cdc && cdc <= 1.0, "bound violated at iter " + std::to_string(iter) + ": " + fmt(cdc));
    }
    c.finish();
}

void criterion_4_property_two() {
    Criterion c("4. cDC strictly increases with overlap at equal size (200 constructed pairs)");
    testsupport::RandomEngine rng(271828);
    for (int iter = 0; iter < 200; ++iter) {
        const auto shifted = testsupport::overlap_shift_case(rng);
        const double low = continuous_dice(shifted.a, shifted.b).value;
        const double high = continuous_dice(shifted.a, shifted.d).value;
        c.expect(low < high, "iter " + std::to_string(iter) + ": " + fmt(low) + " !< " + fmt(high));
    }
    c.finish();
}

void criterion_5_worked_example() {
    Criterion c("5. worked 4-voxel pair gives c = 0.75 and cDC = 3/3.25 (<= 1e-12)");
    const BinaryMask a(ScalarVolume(Dims(4, 1, 1), {}, {1.0, 1.0, 0.0, 0.0}));
    const ProbMap b(ScalarVolume(Dims(4, 1, 1), {}, {0.5, 1.0, 0.25, 0.0}));
    const MetricReport r = continuous_dice(a, b);
    c.expect(std::abs(r.c - 0.75) <= 1e-12, "c = " + fmt(r.c));
    c.expect(std::abs(r.value - 3.0 / 3.25) <= 1e-12, "cdc = " + fmt(r.value));
    c.finish("c=" + format_short(r.c) + ", cdc=" + format_short(r.value));
}

constexpr std::uint64_t kExperimentSeed = 7;

void criterion_6_pve_phenomenon() {
    Criterion c("6. PVE phenomenon across stn/gp/thalamus presets (20 trials, 0.25 mm shift)");
    using namespace cdice::sim;

    std::vector<TrialStatistics> stats;
    for (const Structure s : {Structure::Stn, Structure::Gp, Structure::Thalamus}) {
        ExperimentConfig cfg = preset_config(s);
        cfg.seed = kExperimentSeed;
        stats.push_back(run_pve_experiment(cfg));
    }
    const TrialStatistics& stn = stats[0];
    const TrialStatistics& gp = stats[1];
    const TrialStatistics& thalamus = stats[2];

    c.expect(stn.mean_cdc > stn.mean_dc,
             "(a) mean_cdc " + fmt(stn.mean_cdc) + " !> mean_dc " + fmt(stn.mean_dc));
    c.expect(stn.sd_cdc < stn.sd_dc, "(b) sd_cdc " + fmt(stn.sd_cdc) + " !< sd_dc " + fmt(stn.sd_dc));
    c.expect(stn.mean_dc < gp.mean_dc && gp.mean_dc < thalamus.mean_dc,
             "(c) mean_dc not strictly increasing: " + fmt(stn.mean_dc) + ", " + fmt(gp.mean_dc) + ", " +
                 fmt(thalamus.mean_dc));

    const auto spread = [](double a, double b, double d) {
        return std::max({a, b, d}) - std::min({a, b, d});
    };
    const double dc_spread = spread(stn.mean_dc, gp.mean_dc, thalamus.mean_dc);
    const double cdc_spread = spread(stn.mean_cdc, gp.mean_cdc, thalamus.mean_cdc);
    c.expect(cdc_spread < dc_spread,
             "(d) cdc spread " + fmt(cdc_spread) + " !< dc spread " + fmt(dc_spread));

    const double secs = c.elapsed_s();
    c.expect(secs < 30.0, "runtime " + format_short(secs) + "s exceeds 30s");
    c.finish("stn DC " + format_short(stn.mean_dc) + " vs cDC " + format_short(stn.mean_cdc) + ", " + format_short(secs) +
             "s");
}

void criterion_7_reference_report(const std::string& cli, const fs::path& tmp) {
    Criterion c("7. simulate report prints the reference DC/cDC values beside simulated ones");
    const auto stn = run_cli(cli,
                             {"simulate", "--structure", "stn", "--shift-mm", "0.25", "--trials", "20", "--seed",
                              std::to_string(kExperimentSeed), "--out", (tmp / "c7_stn.csv").string()},
                             tmp / "c7_stn.out");
    c.expect(stn.code == 0, "stn run exited " + std::to_string(stn.code));
    c.expect(stn.output.find("stn,summary,") != std::string::npos, "stn summary row missing");
    c.expect(stn.output.find("stn,reference,0.86,0.025,0.97,0.006") != std::string::npos,
             "stn reference row missing: " + stn.output);

    // The reported stn summary itself shows the contrast: mean_cdc > mean_dc.
    {
        std::istringstream fields(stn.output.substr(stn.output.find("stn,summary,") + 12));
        std::string mean_dc_s, sd_dc_s, mean_cdc_s;
        std::getline(fields, mean_dc_s, ',');
        std::getline(fields, sd_dc_s, ',');
        std::getline(fields, mean_cdc_s, ',');
        c.expect(std::stod(mean_cdc_s) > std::stod(mean_dc_s),
                 "stn summary ordering: cdc " + mean_cdc_s + " !> dc " + mean_dc_s);
    }

    const auto thal = run_cli(cli,
                              {"simulate", "--structure", "thalamus", "--shift-mm", "0.25", "--trials", "20",
                               "--seed", std::to_string(kExperimentSeed), "--out", (tmp / "c7_thal.csv").string()},
                              tmp / "c7_thal.out");
    c.expect(thal.code == 0, "thalamus run exited " + std::to_string(thal.code));
    c.expect(thal.output.find("thalamus,reference,0.98,0.006,0.99,0.001") != std::string::npos,
             "thalamus reference row missing: " + thal.output);
    // The 0.66/0.80 automatic-segmentation result needs an unavailable patient
    // database and is deliberately out of scope here.
    c.finish();
}

void criterion_8_determinism(const std::string& cli, const fs::path& tmp) {
    Criterion c("8. simulate is byte-deterministic across reruns and thread counts");
    const std::vector<std::string> base{"simulate", "--structure", "stn",  "--shift-mm", "0.25",
                                        "--trials", "20",          "--seed", std::to_string(kExperimentSeed)};

    auto with = [&](const std::string& out_csv, const std::vector<std::string>& extra) {
        std::vector<std::string> args = base;
        args.push_back("--out");
        args.push_back(out_csv);
        args.insert(args.end(), extra.begin(), extra.end());
        return args;
    };

    const auto a = run_cli(cli, with((tmp / "c8_a.csv").string(), {}), tmp / "c8_a.out");
    const auto b = run_cli(cli, with((tmp / "c8_b.csv").string(), {}), tmp / "c8_b.out");
    c.expect(a.code == 0 && b.code == 0, "reruns exited nonzero");
    c.expect(slurp(tmp / "c8_a.csv") == slurp(tmp / "c8_b.csv"), "rerun CSV bytes differ");
    c.expect(a.output == b.output, "rerun stdout differs");

    const auto t1 = run_cli(cli, with((tmp / "c8_t1.csv").string(), {"--threads", "1"}), tmp / "c8_t1.out");
    const auto t4 = run_cli(cli, with((tmp / "c8_t4.csv").string(), {"--threads", "4"}), tmp / "c8_t4.out");
    c.expect(t1.code == 0 && t4.code == 0, "threaded runs exited nonzero");
    c.expect(slurp(tmp / "c8_t1.csv") == slurp(tmp / "c8_t4.csv"), "1-thread vs 4-thread CSV bytes differ");
    c.finish();
}

void criterion_9_performance(const fs::path& tmp) {
    Criterion c("9. 256^3 continuous_dice under 1 s; 256^3 SVOL round-trip under 2 s");
    const Dims dims(256, 256, 256);
    testsupport::RandomEngine rng(512);

    std::vector<double> bin(dims.voxel_count());
    std::vector<double> prob(dims.voxel_count());
    std::uniform_real_distribution<float> uf(0.0f, 1.0f);
    std::bernoulli_distribution one(0.2);
    for (std::size_t i = 0; i < bin.size(); ++i) {
        bin[i] = one(rng) ? 1.0 : 0.0;
        prob[i] = static_cast<double>(uf(rng));  // float-representable for the bit-exact check
    }
    const BinaryMask a(ScalarVolume(dims, Spacing(0.5, 0.5, 0.5), std::move(bin)));
    const ProbMap b(ScalarVolume(dims, Spacing(0.5, 0.5, 0.5), std::move(prob)));

    const auto t0 = std::chrono::steady_clock::now();
    const MetricReport r = continuous_dice(a, b);
    const double metric_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(0.0 <= r.value && r.value <= 1.0, "metric out of range");
    c.expect(metric_s < 1.0, "continuous_dice took " + format_short(metric_s) + "s");

    const auto t1 = std::chrono::steady_clock::now();
    store_volume(b.volume(), tmp / "perf");
    const ScalarVolume back = load_volume(tmp / "perf");
    const double io_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
    c.expect(io_s < 2.0, "SVOL round-trip took " + format_short(io_s) + "s");
    bool identical = back.dims() == dims;
    for (std::size_t i = 0; identical && i < back.size(); ++i) identical = back.data()[i] == b.data()[i];
    c.expect(identical, "round-tripped volume differs");
    c.finish("metric " + format_short(metric_s) + "s, io " + format_short(io_s) + "s");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: cdice_acceptance <path-to-cli-binary>\n";
        return 2;
    }
    const std::string cli = argv[1];

    fs::path tmp = fs::temp_directory_path() / ("cdice-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(tmp);

    criterion_1_oracle_equivalence();
    criterion_2_binary_consistency();
    criterion_3_property_one();
    criterion_4_property_two();
    criterion_5_worked_example();
    criterion_6_pve_phenomenon();
    criterion_7_reference_report(cli, tmp);
    criterion_8_determinism(cli, tmp);
    criterion_9_performance(tmp);

    std::error_code ec;
    fs::remove_all(tmp, ec);

    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
