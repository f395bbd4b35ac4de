#include "montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"

namespace ppmbeam {

void SimSpec::validate() const {
  config.validate();
  if (!(point.ebn0 >= 0.0)) throw DomainError("Eb/N0 must be non-negative");
  if (n_symbols < 1)
    throw DomainError("simulation needs at least one symbol, got " + std::to_string(n_symbols));
  if (n_chunks < 1) throw DomainError("chunk count must be >= 1, got " + std::to_string(n_chunks));
  if (const auto* g = std::get_if<PointingGeometry>(&source))
    g->validate();
  else
    ppmbeam::validate(std::get<FadeDistribution>(source));
}

double sample_collected_fraction(const PointingGeometry& g, const EquivalentBeam& beam,
                                 RandomStream& rng) {
  const double x = g.mu_x + g.sigma_x * rng.normal();
  const double y = g.mu_y + g.sigma_y * rng.normal();
  return collected_fraction(std::hypot(x, y), beam);
}

double sample_collected_fraction(const PointingGeometry& g, RandomStream& rng) {
  return sample_collected_fraction(g, equivalent_beam(g), rng);
}

namespace {

struct FadeSampler {
  // 0: fixed t0, 1: inverse-CDF power law, 2: geometry
  int kind = 0;
  double t0 = 0.0;
  double inv_phi2 = 0.0;
  double t_max = 0.0;
  const PointingGeometry* geometry = nullptr;
  EquivalentBeam beam;

  double draw(RandomStream& rng) const {
    switch (kind) {
      case 0: return t0;
      case 1: return t_max * std::pow(rng.uniform_pos(), inv_phi2);
      default: return sample_collected_fraction(*geometry, beam, rng);
    }
  }
};

FadeSampler make_sampler(const SimSpec& spec) {
  FadeSampler s;
  if (const auto* g = std::get_if<PointingGeometry>(&spec.source)) {
    s.kind = 2;
    s.geometry = g;
    s.beam = equivalent_beam(*g);
    return s;
  }
  const auto& fade = std::get<FadeDistribution>(spec.source);
  if (const auto* det = std::get_if<DeterministicFade>(&fade)) {
    s.kind = 0;
    s.t0 = det->t0;
  } else {
    const auto& gf = std::get<GammaFade>(fade);
    s.kind = 1;
    s.inv_phi2 = 1.0 / gf.phi2;
    s.t_max = gf.t_max;
  }
  return s;
}

long long run_chunk(const SimSpec& spec, const FadeSampler& sampler, std::uint64_t chunk,
                    long long symbols) {
  RandomStream rng(spec.seed, chunk);
  const int m = spec.config.noise_modes;
  const int noise_slots = spec.config.order - 1;
  const double load_scale = spec.point.ebn0 * spec.config.bits_per_symbol();

  long long errors = 0;
  for (long long i = 0; i < symbols; ++i) {
    const double t = sampler.draw(rng);
    const double xi = t * load_scale;
    const long long extra = xi > 0.0 ? rng.poisson(xi) : 0;
    const double signal = rng.gamma(static_cast<double>(m) + static_cast<double>(extra));

    double best_noise = -1.0;
    int ties = 0;
    for (int slot = 0; slot < noise_slots; ++slot) {
      const double v = rng.gamma(static_cast<double>(m));
      if (v > best_noise) {
        best_noise = v;
        ties = 1;
      } else if (v == best_noise) {
        ++ties;
      }
    }
    if (best_noise > signal) {
      ++errors;
    } else if (best_noise == signal) {
      // uniform pick among the tied slots; correct only if it lands on the
      // signal slot (ties have~zero probability with continuous statistics,
      // this only guards float coincidences)
      const std::uint64_t pick = rng.next_u64() % static_cast<std::uint64_t>(ties + 1);
      if (pick != 0) ++errors;
    }
  }
  return errors;
}

}  // namespace

SimResult simulate_abep(const SimSpec& spec) {
  spec.validate();
  const FadeSampler sampler = make_sampler(spec);

  const int chunks = static_cast<int>(std::min<long long>(spec.n_chunks, spec.n_symbols));
  std::vector<long long> chunk_symbols(static_cast<std::size_t>(chunks),
                                       spec.n_symbols / chunks);
  for (long long r = 0; r < spec.n_symbols % chunks; ++r) ++chunk_symbols[static_cast<std::size_t>(r)];

  std::vector<long long> chunk_errors(static_cast<std::size_t>(chunks), 0);
  unsigned threads = spec.n_threads > 0 ? static_cast<unsigned>(spec.n_threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(chunks));

  if (threads <= 1) {
    for (int c = 0; c < chunks; ++c)
      chunk_errors[static_cast<std::size_t>(c)] =
          run_chunk(spec, sampler, static_cast<std::uint64_t>(c), chunk_symbols[static_cast<std::size_t>(c)]);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const int c = next.fetch_add(1);
          if (c >= chunks) return;
          chunk_errors[static_cast<std::size_t>(c)] =
              run_chunk(spec, sampler, static_cast<std::uint64_t>(c),
                        chunk_symbols[static_cast<std::size_t>(c)]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  long long errors = 0;
  for (long long e : chunk_errors) errors += e;

  SimResult result;
  result.n_symbols = spec.n_symbols;
  result.symbol_errors = errors;
  const double pref = spec.config.bit_error_prefactor();
  const double p = static_cast<double>(errors) / static_cast<double>(spec.n_symbols);
  result.abep_estimate = pref * p;
  result.std_error = pref * std::sqrt(p * (1.0 - p) / static_cast<double>(spec.n_symbols));
  return result;
}

}  // namespace ppmbeam
