// chromadec: fuzzy color decoding, appearance, opponent channels, curve
// evolution and color-deficiency simulation for single colors, spectra
// and images.

#include <array>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chromadec/chromadec.hpp"

namespace cd = chromadec;

namespace {

/// Bad flag combinations discovered after parsing. Exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOpts {
    std::string color;
    std::string in_path;
    std::string out_path;
    bool srgb = false;
    std::vector<double> matrix;
    unsigned threads = 0;
};

void add_color_opt(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--color", o.color, "single color as comma-separated channels (B,G,R order for n=3)");
}

void add_image_opts(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--in", o.in_path, "input image (PNG or PPM P6)");
    sub->add_option("--out", o.out_path, "output file; '-' or omitted = stdout (CSV only)");
    sub->add_flag("--srgb", o.srgb, "decode sRGB on ingest (and re-encode emitted color images)");
    sub->add_option("--matrix", o.matrix,
                    "3x3 input matrix over (B,G,R), 9 row-major values; result clamped to [0,1]")
        ->delimiter(',')
        ->expected(9);
    sub->add_option("--threads", o.threads, "worker threads for image ops (0 = auto)");
}

std::vector<double> parse_number_list(const std::string& s, const char* flag) {
    std::vector<double> vals;
    for (auto f : cd::csv::split_fields(s)) {
        try {
            vals.push_back(cd::csv::parse_double_strict(f, flag));
        } catch (const cd::ParseError& e) {
            throw UsageError(e.what());
        }
    }
    return vals;
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f)
        throw cd::IoError("cannot open '" + out_path + "' for writing");
    f << text;
    if (!f)
        throw cd::IoError("short write to '" + out_path + "'");
}

cd::PipelineConfig make_config(const CommonOpts& o, cd::PipelineOp op) {
    cd::PipelineConfig cfg;
    cfg.transfer = o.srgb ? cd::InputTransfer::srgb_decode : cd::InputTransfer::linear;
    if (!o.matrix.empty()) {
        std::array<double, 9> m{};
        std::copy(o.matrix.begin(), o.matrix.end(), m.begin());
        cfg.matrix = m;
    }
    cfg.op = op;
    cfg.threads = o.threads;
    cfg.srgb_encode_output = o.srgb;
    return cfg;
}

/// Apply the same conditioning an image gets (sRGB decode, matrix, clamp)
/// to a bare channel list.
cd::ChannelVector conditioned_color(const CommonOpts& o) {
    std::vector<double> vals = parse_number_list(o.color, "--color");
    if (o.srgb)
        for (auto& v : vals)
            v = std::clamp(cd::srgb_decode(v), 0.0, 1.0);
    if (!o.matrix.empty()) {
        if (vals.size() != 3)
            throw UsageError("--matrix needs a 3-channel --color");
        const auto& m = o.matrix;
        const double b = vals[0], g = vals[1], r = vals[2];
        std::size_t clamped = 0;
        const double out[3] = {m[0] * b + m[1] * g + m[2] * r,
                               m[3] * b + m[4] * g + m[5] * r,
                               m[6] * b + m[7] * g + m[8] * r};
        for (std::size_t i = 0; i < 3; ++i) {
            vals[i] = std::clamp(out[i], 0.0, 1.0);
            if (vals[i] != out[i])
                ++clamped;
        }
        if (clamped > 0)
            std::cerr << "clamped " << clamped << " channel(s) to [0, 1]\n";
    }
    return cd::ChannelVector(std::move(vals));
}

void require_color_xor_image(const CommonOpts& o) {
    if (o.color.empty() == o.in_path.empty())
        throw UsageError("need exactly one of --color or --in");
}

int run_image_pipeline(const CommonOpts& o, cd::PipelineConfig cfg) {
    const bool csv_out = cd::detail::has_suffix_ci(o.out_path, ".csv") ||
                         cfg.op == cd::PipelineOp::decode_report;
    cfg.csv_output = csv_out;
    const bool emits_image = !csv_out;
    if (emits_image && (o.out_path.empty() || o.out_path == "-"))
        throw UsageError("image output needs --out with a .png or .ppm path");
    auto ingest = cd::ingest_image(o.in_path, cfg);
    if (ingest.clamped > 0)
        std::cerr << "clamped " << ingest.clamped << " sample(s) to [0, 1]\n";
    auto result = cd::run_pixel_pipeline(ingest.image, cfg);
    if (result.image) {
        const bool color_image = cfg.op == cd::PipelineOp::simulate_cvd ||
                                 cfg.op == cd::PipelineOp::adapt;
        if (cfg.srgb_encode_output && color_image)
            cd::encode_srgb_image(*result.image);
        cd::write_image(o.out_path, *result.image);
    } else {
        write_text(o.out_path, result.csv);
    }
    return 0;
}

std::string decode_csv(const cd::DecoderOutput& out) {
    std::ostringstream os;
    os << "code,label,activation" << cd::csv::kCrlf;
    if (out.channels() == 3) {
        for (unsigned mask : cd::kCanonicalOrder3)
            os << cd::CodeWord(mask, 3).to_string() << ',' << cd::code_label3(mask)
               << ',' << cd::csv::format_double(out.activation(mask)) << cd::csv::kCrlf;
    } else {
        for (unsigned mask = 0; mask < out.size(); ++mask)
            os << cd::CodeWord(mask, out.channels()).to_string() << ",,"
               << cd::csv::format_double(out.activation(mask)) << cd::csv::kCrlf;
    }
    return os.str();
}

int run_decode(const CommonOpts& o) {
    require_color_xor_image(o);
    if (!o.color.empty()) {
        const cd::ChannelVector c = conditioned_color(o);
        const cd::DecoderOutput out = c.size() == 3 ? cd::decode3(c) : cd::decode_n(c);
        write_text(o.out_path, decode_csv(out));
        return 0;
    }
    return run_image_pipeline(o, make_config(o, cd::PipelineOp::decode_report));
}

int run_to_hsv(const CommonOpts& o) {
    require_color_xor_image(o);
    if (!o.color.empty()) {
        const auto a = cd::to_appearance(conditioned_color(o));
        std::ostringstream os;
        os << "hue,saturation,value" << cd::csv::kCrlf;
        if (a.hue)
            os << cd::csv::format_fixed(*a.hue, 9);
        os << ',' << cd::csv::format_double(a.saturation) << ','
           << cd::csv::format_double(a.value) << cd::csv::kCrlf;
        write_text(o.out_path, os.str());
        return 0;
    }
    return run_image_pipeline(o, make_config(o, cd::PipelineOp::to_hsv));
}

int run_decompose(const CommonOpts& o) {
    if (o.color.empty())
        throw UsageError("decompose needs --color");
    const auto d = cd::decompose(conditioned_color(o));
    std::array<double, 8> coeff{};
    coeff[0] = d.blackness;
    for (const auto& term : d.terms)
        coeff[term.unit.mask()] = term.coefficient;
    std::ostringstream os;
    os << "code,label,coefficient" << cd::csv::kCrlf;
    for (unsigned mask : cd::kCanonicalOrder3)
        if (coeff[mask] != 0.0)
            os << cd::CodeWord(mask, 3).to_string() << ',' << cd::code_label3(mask)
               << ',' << cd::csv::format_double(coeff[mask]) << cd::csv::kCrlf;
    write_text(o.out_path, os.str());
    return 0;
}

int run_opponent(const CommonOpts& o) {
    if (o.color.empty())
        throw UsageError("opponent needs --color");
    const auto t = cd::opponent(conditioned_color(o));
    std::ostringstream os;
    os << "M,M_BY,M_GM,M_RC" << cd::csv::kCrlf
       << cd::csv::format_double(t.m) << ',' << cd::csv::format_double(t.m_by) << ','
       << cd::csv::format_double(t.m_gm) << ',' << cd::csv::format_double(t.m_rc)
       << cd::csv::kCrlf;
    write_text(o.out_path, os.str());
    return 0;
}

cd::CvdProfile profile_from_name(const std::string& name, double severity) {
    if (name == "mono") {
        if (severity != 1.0)
            throw UsageError("profile 'mono' only supports --severity 1");
        return cd::CvdProfile::mono();
    }
    if (name == "protan") return cd::CvdProfile::protan(severity);
    if (name == "deutan1") return cd::CvdProfile::deutan1(severity);
    if (name == "deutan2") return cd::CvdProfile::deutan2(severity);
    if (name == "tritan") return cd::CvdProfile::tritan(severity);
    if (name == "tetartan") return cd::CvdProfile::tetartan(severity);
    throw UsageError("unknown profile '" + name + "'");
}

std::string color_csv(const cd::ChannelVector& c) {
    std::ostringstream os;
    os << "B,G,R" << cd::csv::kCrlf
       << cd::csv::format_double(c[0]) << ',' << cd::csv::format_double(c[1]) << ','
       << cd::csv::format_double(c[2]) << cd::csv::kCrlf;
    return os.str();
}

int run_simulate_cvd(const CommonOpts& o, const std::string& profile_name, double severity) {
    require_color_xor_image(o);
    const cd::CvdProfile profile = profile_from_name(profile_name, severity);
    if (!o.color.empty()) {
        write_text(o.out_path, color_csv(cd::simulate_cvd(conditioned_color(o), profile)));
        return 0;
    }
    auto cfg = make_config(o, cd::PipelineOp::simulate_cvd);
    cfg.profile = profile;
    return run_image_pipeline(o, cfg);
}

int run_adapt(const CommonOpts& o, const std::string& gains_str) {
    require_color_xor_image(o);
    if (gains_str.empty())
        throw UsageError("adapt needs --gains b,g,r");
    const auto g = parse_number_list(gains_str, "--gains");
    if (g.size() != 3)
        throw UsageError("--gains needs exactly 3 values");
    const cd::GainVector gains(g[0], g[1], g[2]);
    if (!o.color.empty()) {
        write_text(o.out_path, color_csv(cd::adapt(conditioned_color(o), gains)));
        return 0;
    }
    auto cfg = make_config(o, cd::PipelineOp::adapt);
    cfg.gains = gains;
    return run_image_pipeline(o, cfg);
}

cd::EvolutionStage stage_from_name(const std::string& name) {
    if (name == "monochromat") return cd::EvolutionStage::monochromat;
    if (name == "dichromat_BY") return cd::EvolutionStage::dichromat_by;
    if (name == "trichromat") return cd::EvolutionStage::trichromat;
    if (name == "alt_dichromat_RC") return cd::EvolutionStage::alt_dichromat_rc;
    throw UsageError("unknown stage '" + name + "'");
}

cd::CurveSet load_curves(const std::string& curves_path, const std::string& stage_name) {
    if (!curves_path.empty() && !stage_name.empty())
        throw UsageError("--curves and --stage are mutually exclusive");
    if (!curves_path.empty()) {
        std::ifstream f(curves_path, std::ios::binary);
        if (!f)
            throw cd::IoError("cannot open '" + curves_path + "'");
        return cd::csv::read_curves(f);
    }
    if (!stage_name.empty())
        return cd::evolution_stage(stage_from_name(stage_name));
    return cd::default_curves();
}

int run_sweep(const CommonOpts& o, const std::string& curves_path, const std::string& stage_name) {
    cd::CurveSet set = load_curves(curves_path, stage_name);
    if (set.size() <= 3)
        set = cd::expand_to_trichromat(set);
    std::ostringstream os;
    cd::csv::write_sweep(os, cd::sweep(set));
    write_text(o.out_path, os.str());
    return 0;
}

int run_evolve(const CommonOpts& o, const std::string& stage_name) {
    if (stage_name.empty())
        throw UsageError("evolve needs --stage");
    std::ostringstream os;
    cd::csv::write_curves(os, cd::evolution_stage(stage_from_name(stage_name)));
    write_text(o.out_path, os.str());
    return 0;
}

int run_unique_colors(const CommonOpts& o, int n) {
    std::ostringstream os;
    os << "code,label" << cd::csv::kCrlf;
    for (const auto& w : cd::enumerate_unique_colors(static_cast<std::size_t>(n))) {
        os << w.to_string() << ',';
        if (n == 3)
            os << cd::code_label3(w.mask());
        os << cd::csv::kCrlf;
    }
    write_text(o.out_path, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fuzzy color decoding toolkit: n-channel code activations, "
                 "hue/saturation/value, opponent channels, sensitivity-curve "
                 "evolution and color-deficiency simulation"};
    app.set_version_flag("--version", "chromadec 0.1.0");
    app.require_subcommand(1);

    int rc = 0;

    CommonOpts dec_o;
    auto* dec = app.add_subcommand("decode", "all code activations of a color or image");
    add_color_opt(dec, dec_o);
    add_image_opts(dec, dec_o);
    dec->callback([&] { rc = run_decode(dec_o); });

    CommonOpts hsv_o;
    auto* hsv = app.add_subcommand("to-hsv", "hue/saturation/value of a color or image");
    add_color_opt(hsv, hsv_o);
    add_image_opts(hsv, hsv_o);
    hsv->callback([&] { rc = run_to_hsv(hsv_o); });

    CommonOpts dcp_o;
    auto* dcp = app.add_subcommand("decompose", "split a color into weighted unit colors");
    add_color_opt(dcp, dcp_o);
    dcp->add_option("--out", dcp_o.out_path, "output CSV; omitted = stdout");
    dcp->add_flag("--srgb", dcp_o.srgb, "decode sRGB first");
    dcp->callback([&] { rc = run_decompose(dcp_o); });

    CommonOpts opp_o;
    auto* opp = app.add_subcommand("opponent", "median and signed opponent channels of a color");
    add_color_opt(opp, opp_o);
    opp->add_option("--out", opp_o.out_path, "output CSV; omitted = stdout");
    opp->add_flag("--srgb", opp_o.srgb, "decode sRGB first");
    opp->callback([&] { rc = run_opponent(opp_o); });

    CommonOpts cvd_o;
    std::string cvd_profile;
    double cvd_severity = 1.0;
    auto* cvd = app.add_subcommand("simulate-cvd", "apply a color-deficiency channel merge");
    add_color_opt(cvd, cvd_o);
    add_image_opts(cvd, cvd_o);
    cvd->add_option("--profile", cvd_profile, "mono|protan|deutan1|deutan2|tritan|tetartan")
        ->required()
        ->check(CLI::IsMember({"mono", "protan", "deutan1", "deutan2", "tritan", "tetartan"}));
    cvd->add_option("--severity", cvd_severity, "merge severity in [0,1], default 1")
        ->check(CLI::Range(0.0, 1.0));
    cvd->callback([&] { rc = run_simulate_cvd(cvd_o, cvd_profile, cvd_severity); });

    CommonOpts ada_o;
    std::string ada_gains;
    auto* ada = app.add_subcommand("adapt", "attenuate channels by per-channel gains");
    add_color_opt(ada, ada_o);
    add_image_opts(ada, ada_o);
    ada->add_option("--gains", ada_gains, "per-channel gains b,g,r in [0,1]")->required();
    ada->callback([&] { rc = run_adapt(ada_o, ada_gains); });

    CommonOpts swp_o;
    std::string swp_curves, swp_stage;
    auto* swp = app.add_subcommand("sweep", "decode every wavelength of a curve set to CSV");
    swp->add_option("--curves", swp_curves, "curve-set CSV (wavelength_nm,<names>...)");
    swp->add_option("--stage", swp_stage,
                    "built-in stage: monochromat|dichromat_BY|trichromat|alt_dichromat_RC")
        ->check(CLI::IsMember({"monochromat", "dichromat_BY", "trichromat", "alt_dichromat_RC"}));
    swp->add_option("--out", swp_o.out_path, "output CSV; omitted = stdout");
    swp->callback([&] { rc = run_sweep(swp_o, swp_curves, swp_stage); });

    CommonOpts evo_o;
    std::string evo_stage;
    auto* evo = app.add_subcommand("evolve", "emit an evolution stage's curve set as CSV");
    evo->add_option("--stage", evo_stage,
                    "monochromat|dichromat_BY|trichromat|alt_dichromat_RC")
        ->required()
        ->check(CLI::IsMember({"monochromat", "dichromat_BY", "trichromat", "alt_dichromat_RC"}));
    evo->add_option("--out", evo_o.out_path, "output CSV; omitted = stdout");
    evo->callback([&] { rc = run_evolve(evo_o, evo_stage); });

    CommonOpts unq_o;
    int unq_n = 3;
    auto* unq = app.add_subcommand("unique-colors", "list the chromatic codes for n channels");
    unq->add_option("--n", unq_n, "channel count, 1 to 8")->check(CLI::Range(1, 8));
    unq->add_option("--out", unq_o.out_path, "output CSV; omitted = stdout");
    unq->callback([&] { rc = run_unique_colors(unq_o, unq_n); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
