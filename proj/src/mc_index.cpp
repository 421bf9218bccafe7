#include <cmath>
#include <random>

#include "uhull/errors.hpp"
#include "uhull/mc_index.hpp"

namespace uhull {

std::size_t MonteCarloIndex::sample_count(std::size_t n, std::size_t d, double eps, double delta) {
  if (!(eps > 0 && eps < 1) || !(delta > 0 && delta < 1))
    throw Error(ErrorCode::InvalidInput, "epsilon and delta must lie in (0, 1)");
  double dd = static_cast<double>(d);
  double s = (dd * dd * std::log(static_cast<double>(std::max<std::size_t>(n, 1))) + std::log(2 / delta)) /
             (2 * eps * eps);
  return static_cast<std::size_t>(std::ceil(s));
}

MonteCarloIndex::Sample MonteCarloIndex::draw(const UncertainPointSet& model, std::uint64_t seed, std::uint64_t j) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j >> 32)};
  std::mt19937_64 rng(seq);
  Sample out(model.group_count());
  const mpz_class scale = mpz_class(1) << 53;
  for (std::size_t g = 0; g < model.group_count(); ++g) {
    // u is an exact dyadic rational in [0, 1)
    const std::uint64_t raw = rng() >> 11;
    mpz_class bits;
    mpz_import(bits.get_mpz_t(), 1, 1, sizeof raw, 0, 0, &raw);
    Rational u(bits, scale);
    u.canonicalize();
    Rational cum = 0;
    for (std::size_t i = 0; i < model.groups[g].size(); ++i) {
      cum += model.groups[g][i].prob;
      if (u < cum) {
        out[g] = i;
        break;
      }
    }
  }
  return out;
}

MonteCarloIndex MonteCarloIndex::build(const UncertainPointSet& model, double eps, double delta, std::uint64_t seed) {
  validate(model);
  std::size_t s = sample_count(model.site_count(), model.dimension, eps, delta);
  std::vector<Sample> samples;
  samples.reserve(s);
  for (std::size_t j = 0; j < s; ++j) samples.push_back(draw(model, seed, j));
  return restore(model, eps, delta, seed, std::move(samples));
}

MonteCarloIndex MonteCarloIndex::restore(const UncertainPointSet& model, double eps, double delta, std::uint64_t seed,
                                         std::vector<Sample> samples) {
  validate(model);
  MonteCarloIndex idx;
  idx.model_ = model;
  idx.eps_ = eps;
  idx.delta_ = delta;
  idx.seed_ = seed;
  for (const auto& smp : samples) {
    if (smp.size() != model.group_count()) throw Error(ErrorCode::InvalidInput, "sample does not match the model");
    for (std::size_t g = 0; g < smp.size(); ++g)
      if (smp[g] && *smp[g] >= model.groups[g].size()) throw Error(ErrorCode::InvalidInput, "sample site out of range");
  }
  idx.samples_ = std::move(samples);
  idx.prepare();
  return idx;
}

void MonteCarloIndex::prepare() {
  const std::size_t d = model_.dimension;
  hulls_.clear();
  hulls_.reserve(samples_.size());
  for (const auto& smp : samples_) {
    Hull h;
    for (std::size_t g = 0; g < smp.size(); ++g)
      if (smp[g]) h.points.push_back(model_.groups[g][*smp[g]].location);
    if (d == 2) {
      h.polygon = convex_hull_2d(h.points);
      h.points.clear();
    } else if (d == 3 && h.points.size() >= 4) {
      const auto& p = h.points;
      const std::size_t k = p.size();
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
          for (std::size_t c = b + 1; c < k; ++c) {
            std::vector<Rational> u{p[b][0] - p[a][0], p[b][1] - p[a][1], p[b][2] - p[a][2]};
            std::vector<Rational> v{p[c][0] - p[a][0], p[c][1] - p[a][1], p[c][2] - p[a][2]};
            std::vector<Rational> nrm{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
            if (sgn(nrm[0]) == 0 && sgn(nrm[1]) == 0 && sgn(nrm[2]) == 0) continue;
            Rational off = nrm[0] * p[a][0] + nrm[1] * p[a][1] + nrm[2] * p[a][2];
            int side = 0;
            bool support = true;
            for (std::size_t x = 0; x < k && support; ++x) {
              int sd = sgn(nrm[0] * p[x][0] + nrm[1] * p[x][1] + nrm[2] * p[x][2] - off);
              if (sd == 0) continue;
              if (side == 0) side = sd;
              else support = sd == side;
            }
            if (!support || side == 0) continue;
            if (side > 0) {
              for (auto& c2 : nrm) c2 = -c2;
              off = -off;
            }
            h.planes.push_back({std::move(nrm), std::move(off)});
          }
      h.use_planes = !h.planes.empty();
      // coplanar samples have no supporting plane with points strictly on one side
      if (h.use_planes) {
        bool flat = true;
        for (std::size_t x = 0; x < k && flat; ++x) {
          const auto& pl = h.planes[0];
          flat = sgn(pl.normal[0] * p[x][0] + pl.normal[1] * p[x][1] + pl.normal[2] * p[x][2] - pl.offset) == 0;
        }
        if (flat) h.use_planes = false, h.planes.clear();
        else h.points.clear();
      }
    }
    hulls_.push_back(std::move(h));
  }
}

std::size_t MonteCarloIndex::hits(const Point& q) const {
  if (q.dim() != model_.dimension) throw Error(ErrorCode::DimensionMismatch, "query dimension");
  std::size_t k = 0;
  for (const auto& h : hulls_) {
    bool in;
    if (model_.dimension == 2) {
      in = locate_in_polygon(h.polygon, q) != Location::Outside;
    } else if (h.use_planes) {
      in = true;
      for (const auto& pl : h.planes) {
        if (pl.normal[0] * q[0] + pl.normal[1] * q[1] + pl.normal[2] * q[2] > pl.offset) {
          in = false;
          break;
        }
      }
    } else {
      in = point_in_hull(q, h.points) != Location::Outside;
    }
    k += in;
  }
  return k;
}

Rational MonteCarloIndex::query(const Point& q) const {
  if (hulls_.empty()) return 0;
  Rational r(hits(q), hulls_.size());
  r.canonicalize();
  return r;
}

}  // namespace uhull
