#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rmrpa/bms_channel.hpp"
#include "rmrpa/bounds.hpp"
#include "rmrpa/rm_code.hpp"
#include "rmrpa/rpa_decoder.hpp"
#include "rmrpa/run_record.hpp"
#include "rmrpa/sim_harness.hpp"

// Exit codes (stable contract for scripting):
//   0 success, 1 domain error, 2 usage error, 3 runtime failure.

namespace {

using namespace rmrpa;

void emit(const RunRecord& rec, const std::string& format, const std::string& out_path) {
    const std::string text = format == "csv" ? rec.to_csv() : rec.to_json();
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
        f << text;
    }
}

RunRecord record_header() {
    RunRecord rec;
    rec.add("timestamp_utc", utc_timestamp());
    rec.add("tool_version", kToolVersion);
    return rec;
}

std::vector<double> parse_llr_list(const std::string& inline_list, const std::string& path) {
    std::string text;
    if (!path.empty()) {
        std::ifstream f(path);
        if (!f) throw std::runtime_error("cannot open LLR file '" + path + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    } else {
        text = inline_list;
    }
    for (char& c : text)
        if (c == ',' || c == '\n' || c == '\t') c = ' ';
    std::istringstream in(text);
    std::vector<double> llrs;
    std::string tok;
    while (in >> tok) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != tok.size()) throw std::invalid_argument("bad LLR value '" + tok + "'");
        llrs.push_back(v);
    }
    return llrs;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reed-Muller RPA decoding, BMS channel tools, analytic error bounds, and "
                 "reproducible Monte Carlo simulation"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a config file (flags override it)");
    app.set_version_flag("--version", kToolVersion);

    // encode ------------------------------------------------------------
    auto* enc = app.add_subcommand("encode", "Encode a message with RM(m, r)");
    struct {
        int m = 0, r = 0;
        std::string message, format = "bits";
    } enc_opt;
    enc->add_option("--m", enc_opt.m, "Number of variables")->required();
    enc->add_option("--r", enc_opt.r, "Order")->required();
    enc->add_option("--message", enc_opt.message,
                    "Message bits ('0'/'1' string of length k, or hex)")
        ->required();
    enc->add_option("--format", enc_opt.format, "Output format")
        ->check(CLI::IsMember({"bits", "hex"}));
    enc->callback([&] {
        const RmCode code = new_rm_code(enc_opt.m, enc_opt.r);
        const Codeword cw = encode(code, BitVec::parse(enc_opt.message, code.k));
        std::cout << (enc_opt.format == "hex" ? cw.to_hex() : cw.to_bit_string()) << "\n";
    });

    // decode ------------------------------------------------------------
    auto* dec = app.add_subcommand("decode", "RPA-decode an LLR vector for RM(m, r)");
    struct {
        int m = 0, r = 0, iters = 0;
        double clamp = kDefaultLlrClamp;
        std::string llr_list, llr_file, format = "bits";
    } dec_opt;
    dec->add_option("--m", dec_opt.m)->required();
    dec->add_option("--r", dec_opt.r)->required();
    auto* llr_inline = dec->add_option("--llr", dec_opt.llr_list, "Comma/space separated LLRs");
    dec->add_option("--llr-file", dec_opt.llr_file, "File with one LLR per line")
        ->excludes(llr_inline);
    dec->add_option("--iters", dec_opt.iters, "Iterations per level (default ceil(m/2))");
    dec->add_option("--clamp", dec_opt.clamp, "LLR clamp");
    dec->add_option("--format", dec_opt.format)->check(CLI::IsMember({"bits", "hex"}));
    dec->callback([&] {
        if (dec_opt.llr_list.empty() && dec_opt.llr_file.empty())
            throw CLI::ValidationError("decode", "one of --llr / --llr-file is required");
        const RmCode code = new_rm_code(dec_opt.m, dec_opt.r);
        LlrVector L = parse_llr_list(dec_opt.llr_list, dec_opt.llr_file);
        if (L.size() != code.n)
            throw std::invalid_argument("expected " + std::to_string(code.n) + " LLRs, got " +
                                        std::to_string(L.size()));
        for (double& x : L)
            x = x > dec_opt.clamp ? dec_opt.clamp : (x < -dec_opt.clamp ? -dec_opt.clamp : x);
        const int iters =
            dec_opt.iters > 0 ? dec_opt.iters : default_iteration_count(dec_opt.m);
        const Codeword cw = rpa_decode(code, L, DecoderConfig{iters, dec_opt.clamp});
        std::cout << (dec_opt.format == "hex" ? cw.to_hex() : cw.to_bit_string()) << "\n";
    });

    // simulate ----------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "Monte Carlo FER/BER estimation");
    struct {
        int m = 0, r = 0, iters = 0, workers = 0;
        std::uint64_t trials = 0, seed = 0, max_frame_errors = 0;
        double clamp = kDefaultLlrClamp;
        bool random_messages = false, with_bound = false;
        std::string channel, out, format = "json";
    } sim_opt;
    sim->add_option("--m", sim_opt.m)->required();
    sim->add_option("--r", sim_opt.r)->required();
    sim->add_option("--channel", sim_opt.channel, "bsc:<p> | bec:<eps> | awgn:<sigma> | custom:<path>")
        ->required();
    sim->add_option("--trials", sim_opt.trials)->required()->check(CLI::PositiveNumber);
    sim->add_option("--seed", sim_opt.seed)->required();
    sim->add_option("--iters", sim_opt.iters, "Iterations per level (default ceil(m/2))");
    sim->add_option("--workers", sim_opt.workers, "Worker threads (0 = all cores)");
    sim->add_flag("--random-messages", sim_opt.random_messages,
                  "Transmit random messages instead of the all-zeros codeword");
    sim->add_option("--max-frame-errors", sim_opt.max_frame_errors,
                    "Stop early after this many frame errors (0 = run all trials)");
    sim->add_option("--clamp", sim_opt.clamp, "LLR clamp");
    sim->add_flag("--with-bound", sim_opt.with_bound, "Also report the analytic bound");
    sim->add_option("--out", sim_opt.out, "Write the record to this file instead of stdout");
    sim->add_option("--format", sim_opt.format)->check(CLI::IsMember({"json", "csv"}));
    sim->footer(
        "CSV columns (fixed order; JSON uses the same keys):\n"
        "  timestamp_utc, tool_version, m, r, n, k, channel, trials, seed, n_max,\n"
        "  all_zeros_mode, max_frame_errors, workers, llr_clamp, trials_run,\n"
        "  frame_errors, bit_errors, fer, ber, fer_ci95_low, fer_ci95_high,\n"
        "  truncated, wall_seconds\n"
        "With --with-bound, followed by: bound_z, bound_z_1..bound_z_r,\n"
        "  bound_n_1..bound_n_r, bound_log_q1, bound_q1_clamped,\n"
        "  bound_log_a_2..r, bound_log_b_2..r, bound_log_q_i/bound_q_i_clamped\n"
        "  for i = 2..r, bound_log_q_r, bound_q_r_clamped, bound_vacuous,\n"
        "  threshold, r_below_threshold.\n"
        "Doubles are printed with 17 significant digits and round-trip exactly.");
    sim->callback([&] {
        SimConfig cfg;
        cfg.code = new_rm_code(sim_opt.m, sim_opt.r);
        cfg.channel = parse_channel_spec(sim_opt.channel);
        cfg.trials = sim_opt.trials;
        cfg.max_frame_errors = sim_opt.max_frame_errors;
        cfg.seed = sim_opt.seed;
        cfg.n_max = sim_opt.iters > 0 ? sim_opt.iters : default_iteration_count(sim_opt.m);
        cfg.all_zeros_mode = !sim_opt.random_messages;
        cfg.workers = sim_opt.workers;
        cfg.llr_clamp = sim_opt.clamp;
        const SimResult res = run_trials(cfg);
        RunRecord rec = record_from_sim(res, sim_opt.channel);
        if (sim_opt.with_bound)
            append_bound_fields(rec, make_bound_report(BoundInputs{
                                         sim_opt.m, sim_opt.r, bhattacharyya(cfg.channel)}));
        emit(rec, sim_opt.format, sim_opt.out);
    });

    // bound ---------------------------------------------------------------
    auto* bnd = app.add_subcommand("bound", "Analytic bounds on the block error probability");
    struct {
        int m = 0, r = 0, quantize_levels = 0;
        double z = 0.0;
        bool exact_z = false;
        std::string channel, format = "json";
    } bnd_opt;
    bnd->add_option("--m", bnd_opt.m)->required();
    bnd->add_option("--r", bnd_opt.r)->required();
    auto* bnd_z = bnd->add_option("--z", bnd_opt.z, "Channel Bhattacharyya parameter");
    auto* bnd_ch = bnd->add_option("--channel", bnd_opt.channel, "Channel spec (Z derived)");
    bnd_z->excludes(bnd_ch);
    bnd->add_flag("--exact-z", bnd_opt.exact_z,
                  "Use exact Z_i from iterated channel combining (discrete channels)")
        ->needs(bnd_ch);
    bnd->add_option("--quantize", bnd_opt.quantize_levels,
                    "Quantization levels for --exact-z on awgn channels");
    bnd->add_option("--format", bnd_opt.format)->check(CLI::IsMember({"json", "csv"}));
    bnd->callback([&] {
        if (!bnd_z->count() && !bnd_ch->count())
            throw CLI::ValidationError("bound", "exactly one of --z / --channel is required");
        RunRecord rec = record_header();
        BoundReport rep;
        if (bnd_ch->count()) {
            const ChannelModel ch = parse_channel_spec(bnd_opt.channel);
            rec.add("channel", bnd_opt.channel);
            if (bnd_opt.exact_z) {
                const DiscreteBms d = bnd_opt.quantize_levels > 0
                                          ? quantize(ch, bnd_opt.quantize_levels)
                                          : to_discrete(ch);
                rep = make_bound_report(bnd_opt.m, bnd_opt.r,
                                        exact_bhattacharyya_sequence(d, bnd_opt.r));
            } else {
                rep = make_bound_report(BoundInputs{bnd_opt.m, bnd_opt.r, bhattacharyya(ch)});
            }
        } else {
            rep = make_bound_report(BoundInputs{bnd_opt.m, bnd_opt.r, bnd_opt.z});
        }
        rec.add("m", std::int64_t(bnd_opt.m));
        rec.add("r", std::int64_t(bnd_opt.r));
        rec.add("exact_z", bnd_opt.exact_z);
        append_bound_fields(rec, rep);
        emit(rec, bnd_opt.format, "");
    });

    // threshold ---------------------------------------------------------
    auto* thr = app.add_subcommand("threshold", "Order threshold r*(m, Z)");
    struct {
        int m = 0;
        double z = 0.0;
        std::string channel, format = "json";
    } thr_opt;
    thr->add_option("--m", thr_opt.m)->required();
    auto* thr_z = thr->add_option("--z", thr_opt.z);
    auto* thr_ch = thr->add_option("--channel", thr_opt.channel);
    thr_z->excludes(thr_ch);
    thr->add_option("--format", thr_opt.format)->check(CLI::IsMember({"json", "csv"}));
    thr->callback([&] {
        if (!thr_z->count() && !thr_ch->count())
            throw CLI::ValidationError("threshold", "exactly one of --z / --channel is required");
        double z = thr_opt.z;
        RunRecord rec = record_header();
        if (thr_ch->count()) {
            z = bhattacharyya(parse_channel_spec(thr_opt.channel));
            rec.add("channel", thr_opt.channel);
        }
        rec.add("m", std::int64_t(thr_opt.m));
        rec.add("z", z);
        rec.add("lambda", -std::log1p(-z));
        rec.add("threshold", order_threshold(thr_opt.m, z));
        emit(rec, thr_opt.format, "");
    });

    // channel -------------------------------------------------------------
    auto* chn = app.add_subcommand("channel", "Channel inspection and combining");
    struct {
        int combine = 0, quantize_levels = 0;
        std::string channel, format = "json";
    } chn_opt;
    chn->add_option("--channel", chn_opt.channel)->required();
    chn->add_option("--combine", chn_opt.combine, "Apply the minus transform k times")
        ->check(CLI::NonNegativeNumber);
    chn->add_option("--quantize", chn_opt.quantize_levels, "Quantize to this many outputs first");
    chn->add_option("--format", chn_opt.format)->check(CLI::IsMember({"json", "csv"}));
    chn->callback([&] {
        const ChannelModel model = parse_channel_spec(chn_opt.channel);
        const double z = bhattacharyya(model);
        RunRecord rec = record_header();
        rec.add("channel", chn_opt.channel);
        rec.add("z", z);
        const bool continuous =
            std::holds_alternative<BiAwgn>(model) && chn_opt.quantize_levels == 0;
        rec.add("continuous", continuous);
        DiscreteBms work;
        if (!continuous) {
            work = chn_opt.quantize_levels > 0 ? quantize(model, chn_opt.quantize_levels)
                                               : to_discrete(model);
            rec.add("alphabet_size", std::uint64_t(work.p0.size()));
            if (chn_opt.quantize_levels > 0) rec.add("quantized_z", bhattacharyya(work));
        }
        if (chn_opt.combine > 0) {
            if (continuous)
                throw std::invalid_argument("combining an awgn channel requires --quantize");
            DiscreteBms d = work;
            for (int i = 0; i < chn_opt.combine; ++i)
                d = merge_equivalent_outputs(combine_minus(d));
            rec.add("combine_steps", std::int64_t(chn_opt.combine));
            rec.add("combined_z", bhattacharyya(d));
            rec.add("combined_alphabet_size", std::uint64_t(d.p0.size()));
            // Iterated Bhattacharyya bound: Z_k <= 1 - (1 - Z)^(2^k).
            rec.add("combined_z_bound", -std::expm1(std::ldexp(std::log1p(-z), chn_opt.combine)));
        }
        emit(rec, chn_opt.format, "");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ChannelSpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
