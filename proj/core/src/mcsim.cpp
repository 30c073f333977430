#include "wzbc/mcsim.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wzbc/parallel.hpp"

namespace wzbc {

namespace mc {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t batch, std::uint64_t component)
{
    std::uint64_t state = seed ^ (batch * 0x9E3779B97F4A7C15ULL) ^ (component * 0xD1B54A32D192ED03ULL);
    splitmix64(state);
    return splitmix64(state);
}

double uniform(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double NormalSource::next()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform(rng_);
    const double u2 = uniform(rng_);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

} // namespace mc

namespace {

/// Count, mean and sum of squared deviations; merged with Chan's rule.
struct Moments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x)
    {
        n += 1.0;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }

    void merge(const Moments& o)
    {
        if (o.n == 0.0)
            return;
        const double total = n + o.n;
        const double d = o.mean - mean;
        mean += d * o.n / total;
        m2 += o.m2 + d * d * n * o.n / total;
        n = total;
    }

    Estimate estimate() const
    {
        if (n < 2.0)
            return {mean, 0.0};
        return {mean, std::sqrt(m2 / (n - 1.0) / n)};
    }
};

void check_samples(const SimConfig& cfg)
{
    if (cfg.samples < 1)
        throw ProblemError("sample count must be at least 1");
}

/// Runs batch(b, count, moments) for every batch and merges in batch order.
template <class Batch>
std::vector<Estimate> run_batches(const SimConfig& cfg, std::size_t outputs, Batch&& batch)
{
    check_samples(cfg);
    const std::uint64_t batches = (cfg.samples + mc::batch_size - 1) / mc::batch_size;
    std::vector<std::vector<Moments>> per_batch(batches, std::vector<Moments>(outputs));
    parallel_for(batches, cfg.threads, [&](std::size_t b) {
        const std::uint64_t begin = b * mc::batch_size;
        const std::uint64_t count = std::min(mc::batch_size, cfg.samples - begin);
        batch(b, count, per_batch[b]);
    });
    std::vector<Moments> total(outputs);
    for (const auto& m : per_batch)
        for (std::size_t k = 0; k < outputs; ++k)
            total[k].merge(m[k]);
    std::vector<Estimate> out;
    for (const auto& m : total)
        out.push_back(m.estimate());
    return out;
}

} // namespace

std::vector<Estimate> simulate_uncoded_gaussian(const GaussianProblem& problem, const SimConfig& cfg)
{
    require_matched_bandwidth(problem.kappa, "uncoded simulation");
    const std::size_t kr = problem.receivers();
    const double p = problem.power;

    // LMMSE weights of X on (R, Y) with R = sqrt(P) X + W, Y = rho X + sqrt(N) E.
    struct Weights {
        double rho, sn, sw, a, b;
    };
    std::vector<Weights> w(kr);
    for (std::size_t k = 0; k < kr; ++k) {
        const double n = problem.sideinfo_vars[k];
        const double wv = problem.noise_vars[k];
        const double rho = std::sqrt(1.0 - n);
        const double srp = std::sqrt(p);
        const double c11 = p + wv, c12 = srp * rho, c22 = 1.0;
        const double det = c11 * c22 - c12 * c12;
        const double a = (c22 * srp - c12 * rho) / det;
        const double b = (c11 * rho - c12 * srp) / det;
        w[k] = {rho, std::sqrt(n), std::sqrt(wv), a, b};
    }

    return run_batches(cfg, kr, [&](std::uint64_t batch, std::uint64_t count, std::vector<Moments>& out) {
        mc::NormalSource xs(mc::substream_seed(cfg.seed, batch, 0));
        std::vector<double> x(count);
        for (auto& v : x)
            v = xs.next();
        for (std::size_t k = 0; k < kr; ++k) {
            mc::NormalSource noise(mc::substream_seed(cfg.seed, batch, 1 + k));
            const Weights& c = w[k];
            for (std::uint64_t i = 0; i < count; ++i) {
                const double r = std::sqrt(p) * x[i] + c.sw * noise.next();
                const double y = c.rho * x[i] + c.sn * noise.next();
                const double e = x[i] - (c.a * r + c.b * y);
                out[k].add(e * e);
            }
        }
    });
}

std::vector<Estimate> simulate_uncoded_binary(const BinaryProblem& problem, const SimConfig& cfg)
{
    require_matched_bandwidth(problem.kappa, "uncoded simulation");
    const std::size_t kr = problem.receivers();
    return run_batches(cfg, kr, [&](std::uint64_t batch, std::uint64_t count, std::vector<Moments>& out) {
        std::mt19937_64 xs(mc::substream_seed(cfg.seed, batch, 0));
        std::vector<unsigned char> x(count);
        for (auto& v : x)
            v = static_cast<unsigned char>(xs() >> 63);
        for (std::size_t k = 0; k < kr; ++k) {
            std::mt19937_64 rng(mc::substream_seed(cfg.seed, batch, 1 + k));
            const double pk = problem.crossovers[k];
            const double bk = problem.sideinfo_crossovers[k];
            const bool use_channel = pk <= bk;
            for (std::uint64_t i = 0; i < count; ++i) {
                const unsigned char v = x[i] ^ static_cast<unsigned char>(mc::uniform(rng) < pk);
                const unsigned char y = x[i] ^ static_cast<unsigned char>(mc::uniform(rng) < bk);
                const unsigned char xhat = use_channel ? v : y;
                out[k].add(xhat != x[i] ? 1.0 : 0.0);
            }
        }
    });
}

double gaussian_wz_estimator_mse(double sideinfo_var, double s_var)
{
    if (!(sideinfo_var > 0.0 && sideinfo_var <= 1.0) || !(s_var > 0.0 && s_var <= 1.0)) {
        std::ostringstream os;
        os << "variances must lie in (0,1] (N = " << sideinfo_var << ", S_var = " << s_var << ")";
        throw ProblemError(os.str());
    }
    return sideinfo_var / (1.0 - sideinfo_var + sideinfo_var / s_var);
}

Estimate simulate_gaussian_wz_estimator(double sideinfo_var, double s_var, const SimConfig& cfg)
{
    gaussian_wz_estimator_mse(sideinfo_var, s_var);
    const double n = sideinfo_var;
    const double z = 1.0 - s_var;
    const double rho = std::sqrt(1.0 - n);
    const double denom = 1.0 - rho * rho * z;
    const double cz = n / denom;
    const double cy = rho * (1.0 - z) / denom;
    const double sz = std::sqrt(z);
    const double ss = std::sqrt(s_var);
    const double sn = std::sqrt(n);
    return run_batches(cfg, 1, [&](std::uint64_t batch, std::uint64_t count, std::vector<Moments>& out) {
        mc::NormalSource g(mc::substream_seed(cfg.seed, batch, 0));
        for (std::uint64_t i = 0; i < count; ++i) {
            const double zv = sz * g.next();
            const double x = zv + ss * g.next();
            const double y = rho * x + sn * g.next();
            const double e = x - (cz * zv + cy * y);
            out[0].add(e * e);
        }
    })[0];
}

} // namespace wzbc
