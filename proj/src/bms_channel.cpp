#include "rmrpa/bms_channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace rmrpa {

namespace {

constexpr double kProbTol = 1e-12;

double clamp_llr(double x, double c) { return x > c ? c : (x < -c ? -c : x); }

std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

long double lsum(const std::vector<double>& v) {
    long double s = 0;
    for (double x : v) s += x;
    return s;
}

// A symmetry pairing pi with p0[y] = p1[pi(y)] exists iff the multiset of
// (p0, p1) pairs equals the multiset of (p1, p0) pairs.
bool symmetric_within(const std::vector<double>& p0, const std::vector<double>& p1, double tol) {
    const std::size_t n = p0.size();
    std::vector<std::pair<double, double>> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = {p0[i], p1[i]};
        b[i] = {p1[i], p0[i]};
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(a[i].first - b[i].first) > tol || std::abs(a[i].second - b[i].second) > tol)
            return false;
    return true;
}

}  // namespace

DiscreteBms make_discrete_bms(std::vector<double> p0, std::vector<double> p1,
                              std::vector<std::string> labels) {
    if (p0.empty() || p0.size() != p1.size())
        throw std::invalid_argument("discrete channel: p0/p1 must be nonempty, same length");
    if (!labels.empty() && labels.size() != p0.size())
        throw std::invalid_argument("discrete channel: label count mismatch");
    for (std::size_t i = 0; i < p0.size(); ++i)
        if (p0[i] < 0.0 || p1[i] < 0.0 || !std::isfinite(p0[i]) || !std::isfinite(p1[i]))
            throw std::invalid_argument("discrete channel: probabilities must be finite and >= 0");
    if (std::abs(double(lsum(p0) - 1.0L)) > kProbTol || std::abs(double(lsum(p1) - 1.0L)) > kProbTol)
        throw std::invalid_argument("discrete channel: conditionals must sum to 1 (tol 1e-12)");
    if (!symmetric_within(p0, p1, kProbTol))
        throw std::invalid_argument("discrete channel: no output-symmetry pairing found (tol 1e-12)");
    return DiscreteBms{std::move(p0), std::move(p1), std::move(labels)};
}

ChannelModel make_bsc(double p) {
    if (!(p > 0.0 && p < 0.5)) throw std::invalid_argument("bsc: need 0 < p < 1/2");
    return Bsc{p};
}

ChannelModel make_bec(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("bec: need 0 < eps < 1");
    return Bec{eps};
}

ChannelModel make_biawgn(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("awgn: need sigma > 0");
    return BiAwgn{sigma};
}

int sample_index(const DiscreteBms& ch, int input, SplitMix64& rng) {
    const std::vector<double>& p = input ? ch.p1 : ch.p0;
    const double u = rng.next_double();
    double cum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        cum += p[i];
        if (u < cum) return int(i);
    }
    return int(p.size()) - 1;  // u landed in the rounding slack at the top
}

double sample(const ChannelModel& ch, int input, SplitMix64& rng) {
    return std::visit(
        [&](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Bsc>) {
                const bool flip = rng.next_double() < c.p;
                return double(input ^ int(flip));
            } else if constexpr (std::is_same_v<T, Bec>) {
                return rng.next_double() < c.eps ? kBecErasure : double(input);
            } else if constexpr (std::is_same_v<T, BiAwgn>) {
                return (input ? -1.0 : 1.0) + c.sigma * rng.next_gaussian();
            } else {
                return double(sample_index(c, input, rng));
            }
        },
        ch);
}

double llr_of_output(const DiscreteBms& ch, std::size_t idx, double clamp) {
    if (idx >= ch.p0.size()) throw std::invalid_argument("llr: unknown output index");
    const double a = ch.p0[idx], b = ch.p1[idx];
    if (a == 0.0 && b == 0.0) return 0.0;  // zero-mass output, never observed
    if (b == 0.0) return clamp;
    if (a == 0.0) return -clamp;
    return clamp_llr(std::log(a / b), clamp);
}

double llr(const ChannelModel& ch, double symbol, double clamp) {
    return std::visit(
        [&](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Bsc>) {
                const double a = clamp_llr(std::log((1.0 - c.p) / c.p), clamp);
                if (symbol == 0.0) return a;
                if (symbol == 1.0) return -a;
                throw std::invalid_argument("llr: not a BSC output");
            } else if constexpr (std::is_same_v<T, Bec>) {
                if (symbol == 0.0) return clamp;
                if (symbol == 1.0) return -clamp;
                if (symbol == kBecErasure) return 0.0;
                throw std::invalid_argument("llr: not a BEC output");
            } else if constexpr (std::is_same_v<T, BiAwgn>) {
                if (!std::isfinite(symbol)) throw std::invalid_argument("llr: non-finite output");
                return clamp_llr(2.0 * symbol / (c.sigma * c.sigma), clamp);
            } else {
                const double idx = std::nearbyint(symbol);
                if (idx != symbol || idx < 0.0 || idx >= double(c.p0.size()))
                    throw std::invalid_argument("llr: not an output index");
                return llr_of_output(c, std::size_t(idx), clamp);
            }
        },
        ch);
}

double bhattacharyya(const DiscreteBms& ch) {
    long double z = 0;
    for (std::size_t i = 0; i < ch.p0.size(); ++i)
        z += std::sqrt(ch.p0[i] * ch.p1[i]);
    return double(z);
}

double bhattacharyya(const ChannelModel& ch) {
    return std::visit(
        [](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Bsc>) {
                return 2.0 * std::sqrt(c.p * (1.0 - c.p));
            } else if constexpr (std::is_same_v<T, Bec>) {
                return c.eps;
            } else if constexpr (std::is_same_v<T, BiAwgn>) {
                return std::exp(-1.0 / (2.0 * c.sigma * c.sigma));
            } else {
                return bhattacharyya(c);
            }
        },
        ch);
}

DiscreteBms combine_minus(const DiscreteBms& ch) {
    const std::size_t n = ch.p0.size();
    if (n > 4096) throw std::invalid_argument("combine_minus: alphabet size overflow (> 4096)");
    std::vector<double> q0(n * n), q1(n * n);
    for (std::size_t y1 = 0; y1 < n; ++y1) {
        for (std::size_t y2 = 0; y2 < n; ++y2) {
            const std::size_t i = y1 * n + y2;
            q0[i] = 0.5 * (ch.p0[y1] * ch.p0[y2] + ch.p1[y1] * ch.p1[y2]);
            q1[i] = 0.5 * (ch.p0[y1] * ch.p1[y2] + ch.p1[y1] * ch.p0[y2]);
        }
    }
    return make_discrete_bms(std::move(q0), std::move(q1));
}

DiscreteBms merge_equivalent_outputs(const DiscreteBms& ch, double tol) {
    const std::size_t n = ch.p0.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> l(n);
    for (std::size_t i = 0; i < n; ++i) l[i] = llr_of_output(ch, i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return l[a] < l[b]; });

    std::vector<double> q0, q1;
    double anchor = 0.0;
    for (std::size_t idx = 0; idx < n; ++idx) {
        const std::size_t y = order[idx];
        if (idx == 0 || l[y] - anchor > tol) {
            anchor = l[y];
            q0.push_back(0.0);
            q1.push_back(0.0);
        }
        q0.back() += ch.p0[y];
        q1.back() += ch.p1[y];
    }
    return make_discrete_bms(std::move(q0), std::move(q1));
}

DiscreteBms to_discrete(const ChannelModel& ch) {
    return std::visit(
        [](const auto& c) -> DiscreteBms {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Bsc>) {
                return make_discrete_bms({1.0 - c.p, c.p}, {c.p, 1.0 - c.p}, {"0", "1"});
            } else if constexpr (std::is_same_v<T, Bec>) {
                return make_discrete_bms({1.0 - c.eps, 0.0, c.eps}, {0.0, 1.0 - c.eps, c.eps},
                                         {"0", "1", "e"});
            } else if constexpr (std::is_same_v<T, BiAwgn>) {
                throw std::invalid_argument("to_discrete: BI-AWGN needs quantize(ch, levels)");
            } else {
                return c;
            }
        },
        ch);
}

DiscreteBms quantize(const ChannelModel& ch, int levels) {
    if (levels < 4 || levels % 2 != 0)
        throw std::invalid_argument("quantize: levels must be even and >= 4");
    if (!std::holds_alternative<BiAwgn>(ch)) return to_discrete(ch);

    const double sigma = std::get<BiAwgn>(ch).sigma;
    const double span = 1.0 + 6.0 * sigma;  // outermost bins run to +-infinity
    // Cumulative P(Y <= e | input 0), Y ~ N(+1, sigma^2), at the interior edges.
    auto cdf0 = [&](double e) { return 0.5 * std::erfc(-(e - 1.0) / (sigma * std::sqrt(2.0))); };
    std::vector<double> cum(levels + 1);
    cum[0] = 0.0;
    cum[levels] = 1.0;
    for (int i = 1; i < levels; ++i)
        cum[i] = cdf0(-span + 2.0 * span * double(i) / double(levels));

    std::vector<double> p0(levels), p1(levels);
    for (int i = 0; i < levels; ++i) p0[i] = cum[i + 1] - cum[i];
    for (int i = 0; i < levels; ++i) p1[i] = p0[levels - 1 - i];  // mirror: exact symmetry
    return make_discrete_bms(std::move(p0), std::move(p1));
}

std::vector<double> exact_bhattacharyya_sequence(const DiscreteBms& ch, int r, double merge_tol) {
    if (r < 1) throw std::invalid_argument("exact_bhattacharyya_sequence: need r >= 1");
    std::vector<double> z(std::size_t(r), 0.0);
    DiscreteBms w = ch;
    z[std::size_t(r) - 1] = bhattacharyya(w);
    for (int i = r - 2; i >= 0; --i) {
        w = merge_equivalent_outputs(combine_minus(w), merge_tol);
        z[std::size_t(i)] = bhattacharyya(w);
    }
    return z;
}

namespace {

double parse_number(const std::string& s, const char* what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ChannelSpecError(std::string("channel spec: bad ") + what + " '" + s + "'");
    }
    if (pos != s.size())
        throw ChannelSpecError(std::string("channel spec: bad ") + what + " '" + s + "'");
    return v;
}

DiscreteBms load_custom_channel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ChannelSpecError("channel spec: cannot open '" + path + "'");
    std::vector<std::string> labels;
    std::vector<double> p0, p1;
    std::string line;
    while (std::getline(in, line)) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        std::string id, a, b;
        if (!(ls >> id)) continue;
        if (id[0] == '#') continue;
        if (!(ls >> a >> b))
            throw ChannelSpecError("channel spec: malformed line '" + line + "'");
        labels.push_back(id);
        p0.push_back(parse_number(a, "probability"));
        p1.push_back(parse_number(b, "probability"));
    }
    try {
        return make_discrete_bms(std::move(p0), std::move(p1), std::move(labels));
    } catch (const std::invalid_argument& e) {
        throw ChannelSpecError(std::string("channel spec: ") + e.what());
    }
}

}  // namespace

ChannelModel parse_channel_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ChannelSpecError("channel spec: expected '<family>:<arg>', got '" + spec + "'");
    const std::string family = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    try {
        if (family == "bsc") return make_bsc(parse_number(arg, "crossover probability"));
        if (family == "bec") return make_bec(parse_number(arg, "erasure probability"));
        if (family == "awgn") return make_biawgn(parse_number(arg, "sigma"));
        if (family == "custom") return ChannelModel{load_custom_channel(arg)};
    } catch (const ChannelSpecError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ChannelSpecError(std::string("channel spec: ") + e.what());
    }
    throw ChannelSpecError("channel spec: unknown family '" + family + "'");
}

std::string channel_spec_string(const ChannelModel& ch) {
    return std::visit(
        [](const auto& c) -> std::string {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Bsc>) {
                return "bsc:" + fmt_g17(c.p);
            } else if constexpr (std::is_same_v<T, Bec>) {
                return "bec:" + fmt_g17(c.eps);
            } else if constexpr (std::is_same_v<T, BiAwgn>) {
                return "awgn:" + fmt_g17(c.sigma);
            } else {
                return "custom:<" + std::to_string(c.p0.size()) + " outputs>";
            }
        },
        ch);
}

}  // namespace rmrpa
