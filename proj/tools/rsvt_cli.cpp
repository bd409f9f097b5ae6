// rsvt: batch front end for dehazing, benchmarking and prior statistics.

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rsvt/eval/harness.hpp"
#include "rsvt/eval/stats.hpp"
#include "rsvt/eval/synth.hpp"
#include "rsvt/io.hpp"
#include "rsvt/rsvt.hpp"

namespace fs = std::filesystem;
using namespace rsvt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

void print_config(std::ostream& os, const DehazeParams& p, unsigned jobs) {
    os << "rx=" << shortest(p.rsvt.r_correlation) << '\n'
       << "min-tb=" << shortest(p.rsvt.min_tb) << '\n'
       << "clamp-negative=" << (p.rsvt.clamp_negative ? "true" : "false") << '\n'
       << "omega=" << shortest(p.transmission.omega) << '\n'
       << "t0=" << shortest(p.t0) << '\n'
       << "gf-radius=" << p.transmission.refine.radius << '\n'
       << "gf-eps=" << shortest(p.transmission.refine.epsilon) << '\n'
       << "tau=" << shortest(p.softseg.tau) << '\n'
       << "lambda=" << shortest(p.softseg.lambda) << '\n'
       << "fg-radius=" << p.softseg.fg_radius << '\n'
       << "bg-radius=" << p.softseg.bg_radius << '\n'
       << "sigmoid-gain=" << shortest(p.softseg.sigmoid_gain) << '\n'
       << "sigmoid-center=" << shortest(p.softseg.sigmoid_center) << '\n'
       << "seg-gf-radius=" << p.softseg.refine.radius << '\n'
       << "seg-gf-eps=" << shortest(p.softseg.refine.epsilon) << '\n'
       << "jobs=" << jobs << '\n';
}

// Output stem: "out.png" -> "out", so intermediates become out.mask.png etc.
fs::path stem_path(const fs::path& out) {
    fs::path s = out;
    if (detail::lower_extension(s) == ".png") s.replace_extension();
    return s;
}

fs::path with_suffix(const fs::path& stem, const std::string& suffix) {
    return stem.parent_path() / (stem.filename().string() + suffix);
}

Airlight parse_airlight(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
    if (v.size() == 1) v = {v[0], v[0], v[0]};
    if (v.size() != 3) throw std::invalid_argument("airlight must be one value or r,g,b");
    for (double c : v) {
        if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("airlight channels must lie in [0,1]");
    }
    return Airlight::from_rgb({v[0], v[1], v[2]});
}

std::vector<fs::path> images_in(const fs::path& dir) {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (eval::is_image_file(e.path())) out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<eval::HazeCleanPair> load_dataset(const fs::path& dir, eval::Naming naming, unsigned jobs) {
    const eval::DatasetListing listing = eval::list_pairs(dir, naming);
    for (const auto& p : listing.unpaired) std::cerr << "warning: no clean counterpart for " << p.string() << ", skipped\n";
    return eval::load_pairs(listing.pairs, jobs);
}

struct DehazeArgs {
    std::vector<std::string> inputs;
    std::string output;
    bool intermediates = false;
};

int run_dehaze(const DehazeArgs& a, const DehazeParams& params, unsigned jobs) {
    const bool batch = a.inputs.size() > 1;
    std::vector<fs::path> outs;
    for (const auto& in : a.inputs) {
        const fs::path src(in);
        if (batch) {
            outs.push_back(fs::path(a.output.empty() ? "." : a.output) / (src.stem().string() + ".png"));
        } else if (!a.output.empty()) {
            outs.push_back(a.output);
        } else {
            outs.push_back(src.parent_path() / (src.stem().string() + ".dehazed.png"));
        }
    }
    if (batch) fs::create_directories(a.output.empty() ? "." : a.output);

    eval::parallel_for(a.inputs.size(), jobs, [&](std::size_t i) {
        const RgbImage img = load_image(a.inputs[i]);
        const DehazeOutput o = dehaze(img, params);
        save_image(o.restored, outs[i]);
        if (a.intermediates) {
            const fs::path stem = stem_path(outs[i]);
            save_gray(o.mask.m, with_suffix(stem, ".mask.png"));
            save_gray(o.t_foreground.t, with_suffix(stem, ".t.png"));
            save_gray(o.t_background.t, with_suffix(stem, ".tb.png"));
            save_image(o.rsvt_branch, with_suffix(stem, ".rsvt.png"));
            save_image(o.dcp_branch, with_suffix(stem, ".dcp.png"));
        }
    });
    for (const auto& o : outs) std::cout << o.string() << '\n';
    return kExitOk;
}

struct BenchArgs {
    std::string dir;
    std::string output = "bench.csv";
    std::vector<double> sweep{1, 2, 3, 4, 5, 10};
    std::string naming = "flat";
    bool baseline = false;
};

int run_bench(const BenchArgs& a, const DehazeParams& params, unsigned jobs) {
    for (double r : a.sweep) {
        if (!(r > 0.0)) throw std::invalid_argument("sweep values must be > 0");
    }
    const auto pairs = load_dataset(a.dir, a.naming == "reside" ? eval::Naming::Reside : eval::Naming::Flat, jobs);
    const auto reports = eval::run_benchmark(pairs, params, a.sweep, jobs);
    std::ofstream csv(a.output);
    if (!csv) throw std::runtime_error("cannot write " + a.output);
    eval::write_report_csv(csv, reports);
    if (!csv) throw std::runtime_error("cannot write " + a.output);

    std::cout << "pairs: " << pairs.size() << '\n';
    if (pairs.empty()) return kExitOk;
    std::cout << "R\tPSNR\tSSIM\n";
    for (const auto& r : reports) std::cout << r.r_correlation << '\t' << r.mean_psnr() << '\t' << r.mean_ssim() << '\n';
    if (a.baseline) {
        std::vector<eval::MetricRow> rows(pairs.size());
        eval::parallel_for(pairs.size(), jobs, [&](std::size_t i) {
            rows[i] = eval::score(pairs[i].id, eval::dcp_baseline(pairs[i].hazy, params), pairs[i].clean);
        });
        eval::MetricReport dcp{0.0, rows};
        std::cout << "dcp\t" << dcp.mean_psnr() << '\t' << dcp.mean_ssim() << '\n';
    }
    return kExitOk;
}

struct StatsArgs {
    std::string dir;
    std::string prefix = "stats";
    std::string naming = "flat";
    double bright = eval::kBrightThreshold;
    std::size_t max_lines = 300;
};

int run_stats(const StatsArgs& a, const DehazeParams& params, unsigned jobs) {
    const auto pairs = load_dataset(a.dir, a.naming == "reside" ? eval::Naming::Reside : eval::Naming::Flat, jobs);
    eval::PriorStatsOptions opt;
    opt.bright_threshold = a.bright;
    opt.max_lines_per_pair = a.max_lines;
    const eval::PriorStats st = eval::prior_stats(pairs, params, opt);
    for (const auto& w : st.warnings) std::cerr << "warning: " << w << '\n';

    auto write = [](const fs::path& path, const eval::Histogram* h) {
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot write " + path.string());
        if (h) {
            eval::write_histogram_csv(os, *h);
        } else {
            os << "bin_low,bin_high,mass\n";
        }
    };
    write(a.prefix + ".hue.csv", &st.hue.histogram);
    write(a.prefix + ".intersection.csv", &st.intersection_distance);
    write(a.prefix + ".r.csv", st.ratio ? &st.ratio->histogram : nullptr);

    std::cout << "pairs: " << pairs.size() << '\n'
              << "hue below 10/255: " << st.hue.fraction_below << '\n';
    if (st.ratio) {
        std::cout << "R in [2,5]: " << st.ratio->fraction_in_2_5 << '\n'
                  << "R <= 5: " << st.ratio->fraction_at_most_5 << '\n';
    }
    return kExitOk;
}

struct SynthArgs {
    std::string dir;
    std::string output;
    std::optional<double> t;
    std::optional<double> t_top;
    std::optional<double> t_bottom;
    std::string airlight = "0.9";
};

int run_synthesize(const SynthArgs& a) {
    const bool ramp = a.t_top || a.t_bottom;
    if (ramp == a.t.has_value()) throw std::invalid_argument("give either --t or both --t-top and --t-bottom");
    if (ramp && !(a.t_top && a.t_bottom)) throw std::invalid_argument("--t-top and --t-bottom go together");
    for (const auto& v : {a.t, a.t_top, a.t_bottom}) {
        if (v && !(*v >= 0.0 && *v <= 1.0)) throw std::invalid_argument("transmission must lie in [0,1]");
    }
    const Airlight air = parse_airlight(a.airlight);
    fs::create_directories(a.output);
    for (const auto& src : images_in(a.dir)) {
        const RgbImage clean = load_image(src);
        const GrayMap t = ramp ? eval::depth_ramp(clean.width(), clean.height(), *a.t_top, *a.t_bottom)
                               : GrayMap(clean.width(), clean.height(), *a.t);
        const fs::path dst = fs::path(a.output) / (src.stem().string() + ".png");
        save_image(eval::synthesize_haze(clean, t, air), dst);
        std::cout << dst.string() << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-image dehazing with regional saturation-value translation"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    DehazeParams params;
    unsigned jobs = 1;
    bool show_config = false;

    app.set_config("--config", "", "key=value file with defaults for the options below")->envname("RSVT_CONFIG");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.add_option("--rx", params.rsvt.r_correlation, "correlation R between r(x) and t_b(x)");
    app.add_option("--min-tb", params.rsvt.min_tb, "lower clamp on t_b before translation");
    app.add_flag("--clamp-negative", params.rsvt.clamp_negative, "never translate toward the airlight");
    app.add_option("--omega", params.transmission.omega, "haze retention factor");
    app.add_option("--t0", params.t0, "lower bound on t in the recovery");
    app.add_option("--gf-radius", params.transmission.refine.radius, "transmission guided-filter radius");
    app.add_option("--gf-eps", params.transmission.refine.epsilon, "transmission guided-filter epsilon");
    app.add_option("--tau", params.softseg.tau, "hard-foreground threshold on the fused map");
    app.add_option("--lambda", params.softseg.lambda, "mask brightness compensation");
    app.add_option("--fg-radius", params.softseg.fg_radius, "erosion disk radius");
    app.add_option("--bg-radius", params.softseg.bg_radius, "dilation disk radius");
    app.add_option("--sigmoid-gain", params.softseg.sigmoid_gain, "mask stretch gain");
    app.add_option("--sigmoid-center", params.softseg.sigmoid_center, "mask stretch center");
    app.add_option("--seg-gf-radius", params.softseg.refine.radius, "channel-refinement guided-filter radius");
    app.add_option("--seg-gf-eps", params.softseg.refine.epsilon, "channel-refinement guided-filter epsilon");
    app.add_option("--jobs,-j", jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--print-config", show_config, "print the effective configuration and exit");

    DehazeArgs dh;
    auto* cmd_dehaze = app.add_subcommand("dehaze", "dehaze one or more images");
    cmd_dehaze->add_option("inputs", dh.inputs, "input PNG/JPEG files")->required();
    cmd_dehaze->add_option("-o,--output", dh.output, "output PNG (a directory when several inputs are given)");
    cmd_dehaze->add_flag("--intermediates", dh.intermediates, "also write mask, t, tb, rsvt and dcp images");

    BenchArgs bench;
    auto* cmd_bench = app.add_subcommand("bench", "PSNR/SSIM over a hazy/clean dataset for a sweep of R");
    cmd_bench->add_option("dir", bench.dir, "dataset root with hazy/ and clean/")->required()->check(CLI::ExistingDirectory);
    cmd_bench->add_option("-o,--output", bench.output, "CSV report path");
    cmd_bench->add_option("--sweep", bench.sweep, "R values")->delimiter(',');
    cmd_bench->add_option("--naming", bench.naming, "flat or reside")->check(CLI::IsMember({"flat", "reside"}));
    cmd_bench->add_flag("--baseline", bench.baseline, "also report plain dark-channel recovery");

    StatsArgs stats;
    auto* cmd_stats = app.add_subcommand("stats", "hue, intersection and R histograms over bright regions");
    cmd_stats->add_option("dir", stats.dir, "dataset root with hazy/ and clean/")->required()->check(CLI::ExistingDirectory);
    cmd_stats->add_option("-o,--output", stats.prefix, "prefix for <prefix>.hue.csv, .intersection.csv, .r.csv");
    cmd_stats->add_option("--naming", stats.naming, "flat or reside")->check(CLI::IsMember({"flat", "reside"}));
    cmd_stats->add_option("--bright", stats.bright, "gray threshold for bright regions")->check(CLI::Range(0.0, 1.0));
    cmd_stats->add_option("--max-lines", stats.max_lines, "S-V lines kept per pair for intersections");

    SynthArgs synth;
    auto* cmd_synth = app.add_subcommand("synthesize", "haze every clean image in a directory");
    cmd_synth->add_option("dir", synth.dir, "directory of clean images")->required()->check(CLI::ExistingDirectory);
    cmd_synth->add_option("-o,--output", synth.output, "output directory")->required();
    cmd_synth->add_option("--t", synth.t, "constant transmission");
    cmd_synth->add_option("--t-top", synth.t_top, "transmission on the first row of a vertical ramp");
    cmd_synth->add_option("--t-bottom", synth.t_bottom, "transmission on the last row");
    cmd_synth->add_option("--airlight", synth.airlight, "gray level or r,g,b");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    if (show_config) {
        print_config(std::cout, params, jobs);
        return kExitOk;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return kExitUsage;
    }

    try {
        if (*cmd_dehaze) return run_dehaze(dh, params, jobs);
        if (*cmd_bench) return run_bench(bench, params, jobs);
        if (*cmd_stats) return run_stats(stats, params, jobs);
        return run_synthesize(synth);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
