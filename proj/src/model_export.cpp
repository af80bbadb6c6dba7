#include "netcover/model_export.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "netcover/compatibility.hpp"

namespace netcover {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Builder {
  ConicModel m;
  std::map<std::string, int> index;

  int var(const std::string& name, VarKind kind, double lb, double ub) {
    const int ix = static_cast<int>(m.vars.size());
    m.vars.push_back({name, kind, lb, ub});
    index.emplace(name, ix);
    return ix;
  }
  void lin(std::string name, std::vector<LinTerm> terms, RowSense sense,
           double rhs) {
    m.lin.push_back({std::move(name), std::move(terms), sense, rhs});
  }
  void meta(const std::string& key, const std::string& value) {
    m.meta.emplace_back(key, value);
  }
};

void add_coverage_rows(Builder& b, const Network& net, int e, const Ball& ball,
                       double delta, int lam, int z, int xx, int xy,
                       const std::string& row) {
  const Segment s = net.edge_segment(e);
  const double dx = s.b.x - s.a.x;
  const double dy = s.b.y - s.a.y;
  if (ball.norm == Norm::L2) {
    SocRow soc;
    soc.name = row;
    soc.parts.push_back({{{lam, dx}, {xx, -1.0}}, s.a.x});
    soc.parts.push_back({{{lam, dy}, {xy, -1.0}}, s.a.y});
    soc.bound = {{{z, -delta}}, ball.radius + delta};
    b.m.soc.push_back(std::move(soc));
    return;
  }
  const std::array<std::pair<double, double>, 4> signs =
      ball.norm == Norm::L1
          ? std::array<std::pair<double, double>, 4>{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}}
          : std::array<std::pair<double, double>, 4>{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  int k = 0;
  for (const auto& [s1, s2] : signs) {
    std::vector<LinTerm> t;
    const double c = s1 * dx + s2 * dy;
    if (c != 0.0) t.push_back({lam, c});
    if (s1 != 0.0) t.push_back({xx, -s1});
    if (s2 != 0.0) t.push_back({xy, -s2});
    t.push_back({z, delta});
    b.lin(row + "." + std::to_string(k++), std::move(t), RowSense::LE,
          ball.radius + delta - s1 * s.a.x - s2 * s.a.y);
  }
}

}  // namespace

int ConicModel::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == name) return static_cast<int>(i);
  return -1;
}

std::string ConicModel::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta)
    if (k == key) return v;
  return {};
}

double coverage_big_m(const Network& net, double radius) {
  double diam = 0.0;
  for (size_t i = 0; i < net.nodes.size(); ++i)
    for (size_t j = i + 1; j < net.nodes.size(); ++j)
      diam = std::max(diam, std::hypot(net.nodes[i].x - net.nodes[j].x,
                                       net.nodes[i].y - net.nodes[j].y));
  return diam + 2.0 * radius;
}

ConicModel build_single(const Network& net, const Ball& ball,
                        const std::string& instance) {
  if (net.edges.empty())
    throw std::invalid_argument("cannot build a model without edges");
  Builder b;
  b.m.name = instance;
  b.m.maximize = true;
  const double delta = coverage_big_m(net, ball.radius);

  std::vector<int> z, lam0, lam1;
  for (const Edge& e : net.edges)
    z.push_back(b.var("z[" + e.id + "]", VarKind::Binary, 0, 1));
  for (const Edge& e : net.edges) {
    lam0.push_back(b.var("lam0[" + e.id + "]", VarKind::Continuous, 0, 1));
    lam1.push_back(b.var("lam1[" + e.id + "]", VarKind::Continuous, 0, 1));
  }
  const int xx = b.var("X[0]", VarKind::Continuous, -kInf, kInf);
  const int xy = b.var("X[1]", VarKind::Continuous, -kInf, kInf);

  for (size_t e = 0; e < net.edges.size(); ++e) {
    const std::string& id = net.edges[e].id;
    add_coverage_rows(b, net, static_cast<int>(e), ball, delta, lam0[e], z[e],
                      xx, xy, "cov[" + id + ",0]");
    add_coverage_rows(b, net, static_cast<int>(e), ball, delta, lam1[e], z[e],
                      xx, xy, "cov[" + id + ",1]");
    b.lin("ord[" + id + "]", {{lam0[e], 1}, {lam1[e], -1}}, RowSense::LE, 0);
    b.lin("link[" + id + "]", {{lam1[e], 1}, {z[e], -1}}, RowSense::LE, 0);
    const double wl = net.edge_wlength(static_cast<int>(e));
    b.m.objective.push_back({lam1[e], wl});
    b.m.objective.push_back({lam0[e], -wl});
  }

  b.meta("delta", fmt(delta));
  b.meta("edges", std::to_string(net.edges.size()));
  b.meta("instance", instance);
  b.meta("nodes", std::to_string(net.nodes.size()));
  b.meta("norms", norm_name(ball.norm));
  b.meta("p", "1");
  b.meta("problem", "single");
  b.meta("radii", fmt(ball.radius));
  b.meta("tot_wlength", fmt(total_weighted_length(net)));
  return std::move(b.m);
}

ConicModel build_multi(const Network& net, std::span<const Ball> balls,
                       Problem problem, std::optional<double> gamma,
                       std::span<const double> device_costs,
                       const std::string& instance) {
  if (net.edges.empty())
    throw std::invalid_argument("cannot build a model without edges");
  if (balls.empty()) throw std::invalid_argument("p must be >= 1");
  if (problem == Problem::PSNLCLP && !gamma)
    throw std::invalid_argument("psnlclp requires gamma");
  if (!device_costs.empty() && device_costs.size() != balls.size())
    throw std::invalid_argument("device cost count must match p");

  const int p = static_cast<int>(balls.size());
  const int two_p = 2 * p;
  const int m = static_cast<int>(net.edges.size());
  bool identical = true;
  double max_r = 0.0;
  for (const Ball& ball : balls) {
    identical = identical && ball.norm == balls[0].norm &&
                ball.radius == balls[0].radius;
    max_r = std::max(max_r, ball.radius);
  }

  Builder b;
  b.m.name = instance;
  const double delta = coverage_big_m(net, max_r);

  auto jid = [](int j) { return std::to_string(j + 1); };
  auto lid = [](int l) { return std::to_string(l + 1); };

  // variable blocks, deterministic order
  std::vector<std::vector<int>> z(static_cast<size_t>(p));
  for (int j = 0; j < p; ++j)
    for (const Edge& e : net.edges)
      z[static_cast<size_t>(j)].push_back(
          b.var("z[" + jid(j) + "," + e.id + "]", VarKind::Binary, 0, 1));
  std::vector<std::array<int, 2>> X(static_cast<size_t>(p));
  for (int j = 0; j < p; ++j)
    for (int k = 0; k < 2; ++k)
      X[static_cast<size_t>(j)][static_cast<size_t>(k)] =
          b.var("X[" + jid(j) + "," + std::to_string(k) + "]",
                VarKind::Continuous, -kInf, kInf);
  // lam[j][e][s]
  auto lam = [&](int j, int e, int s) {
    return "lam[" + jid(j) + "," + net.edges[static_cast<size_t>(e)].id + "," +
           std::to_string(s) + "]";
  };
  std::vector<int> lam_ix(static_cast<size_t>(p * m * 2));
  auto lam_at = [&](int j, int e, int s) -> int& {
    return lam_ix[static_cast<size_t>((j * m + e) * 2 + s)];
  };
  for (int j = 0; j < p; ++j)
    for (int e = 0; e < m; ++e)
      for (int s = 0; s < 2; ++s)
        lam_at(j, e, s) = b.var(lam(j, e, s), VarKind::Continuous, 0, 1);
  // xi[j][e][l][s], l = 0..2p-1 (named 1..2p)
  std::vector<int> xi_ix(static_cast<size_t>(p * m * two_p * 2));
  auto xi_at = [&](int j, int e, int l, int s) -> int& {
    return xi_ix[static_cast<size_t>(((j * m + e) * two_p + l) * 2 + s)];
  };
  for (int j = 0; j < p; ++j)
    for (int e = 0; e < m; ++e)
      for (int l = 0; l < two_p; ++l)
        for (int s = 0; s < 2; ++s)
          xi_at(j, e, l, s) =
              b.var("xi[" + jid(j) + "," + net.edges[static_cast<size_t>(e)].id +
                        "," + lid(l) + "," + std::to_string(s) + "]",
                    VarKind::Binary, 0, 1);
  // w[e][l], l = 0..2p-2 (named 1..2p-1)
  std::vector<int> w_ix(static_cast<size_t>(m * (two_p - 1)));
  auto w_at = [&](int e, int l) -> int& {
    return w_ix[static_cast<size_t>(e * (two_p - 1) + l)];
  };
  for (int e = 0; e < m; ++e)
    for (int l = 0; l < two_p - 1; ++l)
      w_at(e, l) = b.var("w[" + net.edges[static_cast<size_t>(e)].id + "," +
                             lid(l) + "]",
                         VarKind::Binary, 0, 1);
  // g[j][e][l][s] = lam * xi (exact product of binary and [0,1])
  std::vector<int> g_ix(static_cast<size_t>(p * m * two_p * 2));
  auto g_at = [&](int j, int e, int l, int s) -> int& {
    return g_ix[static_cast<size_t>(((j * m + e) * two_p + l) * 2 + s)];
  };
  for (int j = 0; j < p; ++j)
    for (int e = 0; e < m; ++e)
      for (int l = 0; l < two_p; ++l)
        for (int s = 0; s < 2; ++s)
          g_at(j, e, l, s) =
              b.var("g[" + jid(j) + "," + net.edges[static_cast<size_t>(e)].id +
                        "," + lid(l) + "," + std::to_string(s) + "]",
                    VarKind::Continuous, 0, 1);
  // eta[e][l] = w * (sorted-lambda difference)
  std::vector<int> eta_ix(static_cast<size_t>(m * (two_p - 1)));
  auto eta_at = [&](int e, int l) -> int& {
    return eta_ix[static_cast<size_t>(e * (two_p - 1) + l)];
  };
  for (int e = 0; e < m; ++e)
    for (int l = 0; l < two_p - 1; ++l)
      eta_at(e, l) = b.var("eta[" + net.edges[static_cast<size_t>(e)].id + "," +
                               lid(l) + "]",
                           VarKind::Continuous, 0, 1);
  std::vector<int> y;
  if (problem == Problem::PSNLCLP)
    for (int j = 0; j < p; ++j)
      y.push_back(b.var("y[" + jid(j) + "]", VarKind::Binary, 0, 1));

  // rows
  for (int j = 0; j < p; ++j)
    for (int e = 0; e < m; ++e) {
      const std::string& id = net.edges[static_cast<size_t>(e)].id;
      for (int s = 0; s < 2; ++s)
        add_coverage_rows(b, net, e, balls[static_cast<size_t>(j)], delta,
                          lam_at(j, e, s), z[static_cast<size_t>(j)][static_cast<size_t>(e)],
                          X[static_cast<size_t>(j)][0], X[static_cast<size_t>(j)][1],
                          "cov[" + jid(j) + "," + id + "," + std::to_string(s) + "]");
      b.lin("ord[" + jid(j) + "," + id + "]",
            {{lam_at(j, e, 0), 1}, {lam_at(j, e, 1), -1}}, RowSense::LE, 0);
      b.lin("link[" + jid(j) + "," + id + "]",
            {{lam_at(j, e, 1), 1},
             {z[static_cast<size_t>(j)][static_cast<size_t>(e)], -1}},
            RowSense::LE, 0);
    }

  for (int e = 0; e < m; ++e) {
    const std::string& id = net.edges[static_cast<size_t>(e)].id;
    for (int l = 0; l < two_p; ++l) {
      std::vector<LinTerm> t;
      for (int j = 0; j < p; ++j)
        for (int s = 0; s < 2; ++s) t.push_back({xi_at(j, e, l, s), 1});
      b.lin("pos[" + id + "," + lid(l) + "]", std::move(t), RowSense::EQ, 1);
    }
  }
  for (int j = 0; j < p; ++j)
    for (int e = 0; e < m; ++e)
      for (int s = 0; s < 2; ++s) {
        std::vector<LinTerm> t;
        for (int l = 0; l < two_p; ++l) t.push_back({xi_at(j, e, l, s), 1});
        b.lin("asg[" + jid(j) + "," + net.edges[static_cast<size_t>(e)].id +
                  "," + std::to_string(s) + "]",
              std::move(t), RowSense::EQ, 1);
      }

  // exact product rows g = lam * xi
  for (int j = 0; j < p; ++j)
    for (int e = 0; e < m; ++e)
      for (int l = 0; l < two_p; ++l)
        for (int s = 0; s < 2; ++s) {
          const std::string tag = jid(j) + "," +
                                  net.edges[static_cast<size_t>(e)].id + "," +
                                  lid(l) + "," + std::to_string(s);
          const int g = g_at(j, e, l, s);
          const int xiv = xi_at(j, e, l, s);
          const int lamv = lam_at(j, e, s);
          b.lin("mc1[" + tag + "]", {{g, 1}, {xiv, -1}}, RowSense::LE, 0);
          b.lin("mc2[" + tag + "]", {{g, 1}, {lamv, -1}}, RowSense::LE, 0);
          b.lin("mc3[" + tag + "]", {{g, 1}, {lamv, -1}, {xiv, -1}},
                RowSense::GE, -1);
        }

  for (int e = 0; e < m; ++e) {
    const std::string& id = net.edges[static_cast<size_t>(e)].id;
    for (int l = 0; l + 1 < two_p; ++l) {
      // sorted order: value at slot l <= value at slot l+1
      std::vector<LinTerm> t;
      for (int j = 0; j < p; ++j)
        for (int s = 0; s < 2; ++s) {
          t.push_back({g_at(j, e, l, s), 1});
          t.push_back({g_at(j, e, l + 1, s), -1});
        }
      b.lin("mono[" + id + "," + lid(l) + "]", std::move(t), RowSense::LE, 0);
    }
    for (int l = 0; l < two_p - 1; ++l) {
      std::vector<LinTerm> t{{w_at(e, l), 1}};
      for (int j = 0; j < p; ++j) {
        for (int i = 0; i <= l; ++i) t.push_back({xi_at(j, e, i, 0), -1});
        for (int i = l + 1; i < two_p; ++i) t.push_back({xi_at(j, e, i, 1), -1});
      }
      b.lin("cover[" + id + "," + lid(l) + "]", std::move(t), RowSense::LE,
            -static_cast<double>(p));
    }
    for (int l = 0; l < two_p - 1; ++l) {
      const std::string tag = id + "," + lid(l);
      const int eta = eta_at(e, l);
      b.lin("eta1[" + tag + "]", {{eta, 1}, {w_at(e, l), -1}}, RowSense::LE, 0);
      std::vector<LinTerm> t2{{eta, 1}};
      for (int j = 0; j < p; ++j)
        for (int s = 0; s < 2; ++s) {
          t2.push_back({g_at(j, e, l + 1, s), -1});
          t2.push_back({g_at(j, e, l, s), 1});
        }
      b.lin("eta2[" + tag + "]", std::move(t2), RowSense::LE, 0);
      std::vector<LinTerm> t3{{eta, 1}, {w_at(e, l), -1}};
      for (int j = 0; j < p; ++j)
        for (int s = 0; s < 2; ++s) {
          t3.push_back({g_at(j, e, l + 1, s), -1});
          t3.push_back({g_at(j, e, l, s), 1});
        }
      b.lin("eta3[" + tag + "]", std::move(t3), RowSense::GE, -1);
    }
    // touched/covered link
    std::vector<LinTerm> t;
    for (int l = 0; l < two_p - 1; ++l) t.push_back({w_at(e, l), 1});
    for (int j = 0; j < p; ++j)
      t.push_back({z[static_cast<size_t>(j)][static_cast<size_t>(e)], -2});
    b.lin("tc[" + id + "]", std::move(t), RowSense::LE, 0);
  }

  if (identical)
    for (int j = 0; j + 1 < p; ++j)
      b.lin("sym[" + jid(j) + "]",
            {{X[static_cast<size_t>(j)][0], 1},
             {X[static_cast<size_t>(j)][1], 1},
             {X[static_cast<size_t>(j) + 1][0], -1},
             {X[static_cast<size_t>(j) + 1][1], -1}},
            RowSense::LE, 0);

  // incompatible pairs per device radius (identical balls share one table)
  std::map<std::pair<double, int>, std::vector<std::pair<int, int>>> pair_cache;
  for (int j = 0; j < p; ++j) {
    const Ball& ball = balls[static_cast<size_t>(j)];
    const auto key = std::make_pair(ball.radius, static_cast<int>(ball.norm));
    auto it = pair_cache.find(key);
    if (it == pair_cache.end())
      it = pair_cache.emplace(key, pairwise_incompatible(net, ball)).first;
    for (const auto& [e1, e2] : it->second)
      b.lin("inc[" + jid(j) + "," + net.edges[static_cast<size_t>(e1)].id + "," +
                net.edges[static_cast<size_t>(e2)].id + "]",
            {{z[static_cast<size_t>(j)][static_cast<size_t>(e1)], 1},
             {z[static_cast<size_t>(j)][static_cast<size_t>(e2)], 1}},
            RowSense::LE, 1);
  }

  const double total = total_weighted_length(net);
  if (problem == Problem::MNLCLP) {
    b.m.maximize = true;
    for (int e = 0; e < m; ++e)
      for (int l = 0; l < two_p - 1; ++l)
        b.m.objective.push_back({eta_at(e, l), net.edge_wlength(e)});
  } else {
    b.m.maximize = false;
    for (int j = 0; j < p; ++j)
      b.m.objective.push_back(
          {y[static_cast<size_t>(j)],
           device_costs.empty() ? 1.0 : device_costs[static_cast<size_t>(j)]});
    for (int j = 0; j < p; ++j)
      for (int e = 0; e < m; ++e)
        b.lin("act[" + jid(j) + "," + net.edges[static_cast<size_t>(e)].id + "]",
              {{z[static_cast<size_t>(j)][static_cast<size_t>(e)], 1},
               {y[static_cast<size_t>(j)], -1}},
              RowSense::LE, 0);
    if (identical)
      for (int j = 1; j < p; ++j)
        b.lin("yord[" + jid(j) + "]",
              {{y[static_cast<size_t>(j)], 1},
               {y[static_cast<size_t>(j) - 1], -1}},
              RowSense::LE, 0);
    std::vector<LinTerm> t;
    for (int e = 0; e < m; ++e)
      for (int l = 0; l < two_p - 1; ++l)
        t.push_back({eta_at(e, l), net.edge_wlength(e)});
    b.lin("gamma", std::move(t), RowSense::GE, *gamma * total);
  }

  std::string radii, norms, costs;
  for (int j = 0; j < p; ++j) {
    if (j) {
      radii += ',';
      norms += ',';
      costs += ',';
    }
    radii += fmt(balls[static_cast<size_t>(j)].radius);
    norms += norm_name(balls[static_cast<size_t>(j)].norm);
    if (!device_costs.empty())
      costs += fmt(device_costs[static_cast<size_t>(j)]);
  }
  b.meta("delta", fmt(delta));
  b.meta("edges", std::to_string(m));
  if (gamma) b.meta("gamma", fmt(*gamma));
  b.meta("instance", instance);
  b.meta("n_eta", std::to_string(m * (two_p - 1)));
  b.meta("n_gprod", std::to_string(p * m * two_p * 2));
  b.meta("n_lambda", std::to_string(p * m * 2));
  b.meta("n_pos", std::to_string(2 * p));
  b.meta("n_w", std::to_string(m * (two_p - 1)));
  b.meta("n_xi", std::to_string(p * m * two_p * 2));
  b.meta("n_z", std::to_string(p * m));
  b.meta("nodes", std::to_string(net.nodes.size()));
  b.meta("norms", norms);
  b.meta("p", std::to_string(p));
  b.meta("problem", problem == Problem::MNLCLP ? "mnlclp" : "psnlclp");
  b.meta("radii", radii);
  if (!device_costs.empty()) b.meta("costs", costs);
  b.meta("tot_wlength", fmt(total));
  std::sort(b.m.meta.begin(), b.m.meta.end());
  return std::move(b.m);
}

std::string serialize(const ConicModel& model) {
  std::ostringstream out;
  out << "CMODEL 1\n";
  out << "NAME " << model.name << "\n";
  out << "SENSE " << (model.maximize ? "MAX" : "MIN") << "\n";
  out << "META " << model.meta.size() << "\n";
  for (const auto& [k, v] : model.meta) out << k << " " << v << "\n";
  out << "VARS " << model.vars.size() << "\n";
  for (const Variable& v : model.vars)
    out << v.name << " " << (v.kind == VarKind::Binary ? "B" : "C") << " "
        << fmt(v.lb) << " " << fmt(v.ub) << "\n";
  out << "OBJ " << model.objective.size() << " " << fmt(model.objective_constant)
      << "\n";
  for (const LinTerm& t : model.objective)
    out << model.vars[static_cast<size_t>(t.var)].name << " " << fmt(t.coef)
        << "\n";
  out << "LIN " << model.lin.size() << "\n";
  for (const LinearRow& r : model.lin) {
    out << r.name << " "
        << (r.sense == RowSense::LE ? "LE"
                                    : (r.sense == RowSense::GE ? "GE" : "EQ"))
        << " " << fmt(r.rhs) << " " << r.terms.size();
    for (const LinTerm& t : r.terms)
      out << " " << model.vars[static_cast<size_t>(t.var)].name << " "
          << fmt(t.coef);
    out << "\n";
  }
  out << "SOC " << model.soc.size() << "\n";
  for (const SocRow& r : model.soc) {
    out << r.name << " " << r.parts.size() << "\n";
    auto emit = [&](const char* tag, const AffineExpr& a) {
      out << tag << " " << a.terms.size() << " " << fmt(a.constant);
      for (const LinTerm& t : a.terms)
        out << " " << model.vars[static_cast<size_t>(t.var)].name << " "
            << fmt(t.coef);
      out << "\n";
    };
    for (const AffineExpr& part : r.parts) emit("P", part);
    emit("B", r.bound);
  }
  out << "END\n";
  return out.str();
}

namespace {

struct Tokenizer {
  std::istringstream in;
  explicit Tokenizer(const std::string& text) : in(text) {}
  std::string word() {
    std::string w;
    if (!(in >> w)) throw std::invalid_argument("model parse: unexpected end");
    return w;
  }
  double num() { return std::strtod(word().c_str(), nullptr); }
  size_t count() { return static_cast<size_t>(num()); }
  void expect(const std::string& tag) {
    const std::string w = word();
    if (w != tag)
      throw std::invalid_argument("model parse: expected " + tag + ", got " + w);
  }
};

}  // namespace

ConicModel parse_model(const std::string& text) {
  Tokenizer tk(text);
  tk.expect("CMODEL");
  tk.expect("1");
  ConicModel m;
  std::map<std::string, int> index;
  tk.expect("NAME");
  m.name = tk.word();
  tk.expect("SENSE");
  m.maximize = tk.word() == "MAX";
  tk.expect("META");
  const size_t nmeta = tk.count();
  for (size_t i = 0; i < nmeta; ++i) {
    const std::string k = tk.word();
    m.meta.emplace_back(k, tk.word());
  }
  tk.expect("VARS");
  const size_t nvars = tk.count();
  for (size_t i = 0; i < nvars; ++i) {
    Variable v;
    v.name = tk.word();
    v.kind = tk.word() == "B" ? VarKind::Binary : VarKind::Continuous;
    v.lb = tk.num();
    v.ub = tk.num();
    index.emplace(v.name, static_cast<int>(i));
    m.vars.push_back(std::move(v));
  }
  auto var_of = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end())
      throw std::invalid_argument("model parse: unknown variable " + name);
    return it->second;
  };
  tk.expect("OBJ");
  const size_t nobj = tk.count();
  m.objective_constant = tk.num();
  for (size_t i = 0; i < nobj; ++i) {
    const std::string name = tk.word();
    m.objective.push_back({var_of(name), tk.num()});
  }
  tk.expect("LIN");
  const size_t nlin = tk.count();
  for (size_t i = 0; i < nlin; ++i) {
    LinearRow r;
    r.name = tk.word();
    const std::string s = tk.word();
    r.sense = s == "LE" ? RowSense::LE : (s == "GE" ? RowSense::GE : RowSense::EQ);
    r.rhs = tk.num();
    const size_t nt = tk.count();
    for (size_t t = 0; t < nt; ++t) {
      const std::string name = tk.word();
      r.terms.push_back({var_of(name), tk.num()});
    }
    m.lin.push_back(std::move(r));
  }
  tk.expect("SOC");
  const size_t nsoc = tk.count();
  for (size_t i = 0; i < nsoc; ++i) {
    SocRow r;
    r.name = tk.word();
    const size_t nparts = tk.count();
    auto read_expr = [&](const char* tag) {
      tk.expect(tag);
      AffineExpr a;
      const size_t nt = tk.count();
      a.constant = tk.num();
      for (size_t t = 0; t < nt; ++t) {
        const std::string name = tk.word();
        a.terms.push_back({var_of(name), tk.num()});
      }
      return a;
    };
    for (size_t k = 0; k < nparts; ++k) r.parts.push_back(read_expr("P"));
    r.bound = read_expr("B");
    m.soc.push_back(std::move(r));
  }
  tk.expect("END");
  return m;
}

std::string serialize_assignment(const Assignment& a) {
  std::ostringstream out;
  out << "ASSIGN " << a.values.size() << "\n";
  for (const auto& [k, v] : a.values) out << k << " " << fmt(v) << "\n";
  return out.str();
}

Assignment parse_assignment(const std::string& text) {
  Tokenizer tk(text);
  tk.expect("ASSIGN");
  const size_t n = tk.count();
  Assignment a;
  for (size_t i = 0; i < n; ++i) {
    const std::string k = tk.word();
    a.values[k] = tk.num();
  }
  return a;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<Ball> model_balls(const ConicModel& model) {
  const std::vector<std::string> radii = split(model.meta_value("radii"), ',');
  const std::vector<std::string> norms = split(model.meta_value("norms"), ',');
  std::vector<Ball> balls;
  for (size_t j = 0; j < radii.size(); ++j)
    balls.push_back(
        {norm_from_name(norms[std::min(j, norms.size() - 1)]),
         std::strtod(radii[j].c_str(), nullptr)});
  return balls;
}

}  // namespace

Assignment assignment_from_placement(const ConicModel& model, const Network& net,
                                     std::span<const Device> devices) {
  const std::string problem = model.meta_value("problem");
  const std::vector<Ball> balls = model_balls(model);
  const int p = std::stoi(model.meta_value("p"));
  Assignment a;
  auto set = [&](const std::string& name, double v) { a.values[name] = v; };

  if (problem == "single") {
    if (devices.empty()) throw std::invalid_argument("no device given");
    const Device& dev = devices[0];
    set("X[0]", dev.position.x);
    set("X[1]", dev.position.y);
    for (const Edge& e : net.edges) {
      const auto hit = ball_segment_intersection(
          dev.position, balls[0], net.edge_segment(net.edge_index(e.id)));
      set("z[" + e.id + "]", hit ? 1 : 0);
      set("lam0[" + e.id + "]", hit ? hit->first : 0.0);
      set("lam1[" + e.id + "]", hit ? hit->second : 0.0);
    }
    return a;
  }

  if (static_cast<int>(devices.size()) > p)
    throw std::invalid_argument("more devices than model slots");

  // Identical devices are interchangeable; order them by coordinate sum so
  // the symmetry-breaking rows hold. Heterogeneous models keep the order.
  std::vector<Device> devs(devices.begin(), devices.end());
  bool identical = true;
  for (const Ball& ball : balls)
    identical = identical && ball.norm == balls[0].norm &&
                ball.radius == balls[0].radius;
  if (identical)
    std::stable_sort(devs.begin(), devs.end(), [](const Device& d1, const Device& d2) {
      const double s1 = d1.position.x + d1.position.y;
      const double s2 = d2.position.x + d2.position.y;
      return s1 < s2;
    });
  const int active = static_cast<int>(devs.size());
  Point spare{0.0, 0.0};
  if (active > 0)
    spare = devs.back().position;
  else {
    std::vector<Point> pts;
    for (const Node& n : net.nodes) pts.push_back({n.x, n.y});
    spare = bounding_circle(pts).center;
  }

  const int m = static_cast<int>(net.edges.size());
  const int two_p = 2 * p;
  auto jid = [](int j) { return std::to_string(j + 1); };
  auto lid = [](int l) { return std::to_string(l + 1); };

  for (int j = 0; j < p; ++j) {
    const Point pos = j < active ? devs[static_cast<size_t>(j)].position : spare;
    set("X[" + jid(j) + ",0]", pos.x);
    set("X[" + jid(j) + ",1]", pos.y);
    if (!model.meta_value("gamma").empty() || problem == "psnlclp")
      set("y[" + jid(j) + "]", j < active ? 1 : 0);
  }

  for (int e = 0; e < m; ++e) {
    const std::string& id = net.edges[static_cast<size_t>(e)].id;
    const Segment seg = net.edge_segment(e);
    std::vector<std::pair<double, double>> lam(static_cast<size_t>(p), {0.0, 0.0});
    for (int j = 0; j < p; ++j) {
      bool touch = false;
      if (j < active) {
        const auto hit = ball_segment_intersection(
            devs[static_cast<size_t>(j)].position, balls[static_cast<size_t>(j)],
            seg);
        if (hit) {
          touch = true;
          lam[static_cast<size_t>(j)] = *hit;
        }
      }
      set("z[" + jid(j) + "," + id + "]", touch ? 1 : 0);
      set("lam[" + jid(j) + "," + id + ",0]", lam[static_cast<size_t>(j)].first);
      set("lam[" + jid(j) + "," + id + ",1]", lam[static_cast<size_t>(j)].second);
    }
    // sort all 2p values; ties resolved by (device index, s)
    struct Entry {
      double v;
      int j, s;
    };
    std::vector<Entry> entries;
    for (int j = 0; j < p; ++j)
      for (int s = 0; s < 2; ++s)
        entries.push_back({s == 0 ? lam[static_cast<size_t>(j)].first
                                  : lam[static_cast<size_t>(j)].second,
                           j, s});
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a1, const Entry& a2) {
                       if (a1.v != a2.v) return a1.v < a2.v;
                       if (a1.j != a2.j) return a1.j < a2.j;
                       return a1.s < a2.s;
                     });
    std::vector<double> sorted(static_cast<size_t>(two_p));
    for (int l = 0; l < two_p; ++l) {
      const Entry& en = entries[static_cast<size_t>(l)];
      sorted[static_cast<size_t>(l)] = en.v;
      for (int j = 0; j < p; ++j)
        for (int s = 0; s < 2; ++s) {
          const bool on = j == en.j && s == en.s;
          set("xi[" + jid(j) + "," + id + "," + lid(l) + "," +
                  std::to_string(s) + "]",
              on ? 1 : 0);
          const double lv = s == 0 ? lam[static_cast<size_t>(j)].first
                                   : lam[static_cast<size_t>(j)].second;
          set("g[" + jid(j) + "," + id + "," + lid(l) + "," +
                  std::to_string(s) + "]",
              on ? lv : 0.0);
        }
    }
    for (int l = 0; l < two_p - 1; ++l) {
      const double length_l =
          sorted[static_cast<size_t>(l) + 1] - sorted[static_cast<size_t>(l)];
      bool covered = false;
      if (length_l > 0.0)
        for (int j = 0; j < p && !covered; ++j)
          covered = lam[static_cast<size_t>(j)].first <=
                        sorted[static_cast<size_t>(l)] &&
                    lam[static_cast<size_t>(j)].second >=
                        sorted[static_cast<size_t>(l) + 1] &&
                    lam[static_cast<size_t>(j)].first <
                        lam[static_cast<size_t>(j)].second;
      set("w[" + id + "," + lid(l) + "]", covered ? 1 : 0);
      set("eta[" + id + "," + lid(l) + "]", covered ? length_l : 0.0);
    }
  }
  return a;
}

VerifyResult verify_solution(const ConicModel& model, const Network& net,
                             const Assignment& assignment, double tol) {
  std::vector<double> v(model.vars.size());
  for (size_t i = 0; i < model.vars.size(); ++i) {
    auto it = assignment.values.find(model.vars[i].name);
    if (it == assignment.values.end())
      throw std::invalid_argument("assignment misses variable " +
                                  model.vars[i].name);
    v[i] = it->second;
  }
  VerifyResult res;
  auto flag = [&](const std::string& what, double amount) {
    res.feasible = false;
    res.violations.push_back(what + " violated by " + fmt(amount));
  };

  for (size_t i = 0; i < model.vars.size(); ++i) {
    const Variable& var = model.vars[i];
    if (v[i] < var.lb - tol) flag("lb(" + var.name + ")", var.lb - v[i]);
    if (v[i] > var.ub + tol) flag("ub(" + var.name + ")", v[i] - var.ub);
    if (var.kind == VarKind::Binary &&
        std::abs(v[i] - std::round(v[i])) > tol)
      flag("int(" + var.name + ")", std::abs(v[i] - std::round(v[i])));
  }
  auto value_of = [&](const std::vector<LinTerm>& terms, double constant) {
    double s = constant;
    for (const LinTerm& t : terms) s += t.coef * v[static_cast<size_t>(t.var)];
    return s;
  };
  for (const LinearRow& r : model.lin) {
    const double lhs = value_of(r.terms, 0.0);
    if (r.sense == RowSense::LE && lhs > r.rhs + tol) flag(r.name, lhs - r.rhs);
    if (r.sense == RowSense::GE && lhs < r.rhs - tol) flag(r.name, r.rhs - lhs);
    if (r.sense == RowSense::EQ && std::abs(lhs - r.rhs) > tol)
      flag(r.name, std::abs(lhs - r.rhs));
  }
  for (const SocRow& r : model.soc) {
    double norm2 = 0.0;
    for (const AffineExpr& part : r.parts) {
      const double pv = value_of(part.terms, part.constant);
      norm2 += pv * pv;
    }
    const double bound = value_of(r.bound.terms, r.bound.constant);
    if (std::sqrt(norm2) > bound + tol) flag(r.name, std::sqrt(norm2) - bound);
  }
  res.model_objective =
      value_of(model.objective, model.objective_constant);

  // geometric cross-check
  const std::string problem = model.meta_value("problem");
  const std::vector<Ball> balls = model_balls(model);
  std::vector<Device> devices;
  double model_coverage = 0.0;
  if (problem == "single") {
    devices.push_back({{v[static_cast<size_t>(model.var_index("X[0]"))],
                        v[static_cast<size_t>(model.var_index("X[1]"))]},
                       balls[0]});
    model_coverage = res.model_objective;
  } else {
    const int p = std::stoi(model.meta_value("p"));
    for (int j = 0; j < p; ++j) {
      if (problem == "psnlclp" &&
          v[static_cast<size_t>(model.var_index("y[" + std::to_string(j + 1) + "]"))] <
              0.5)
        continue;
      devices.push_back(
          {{v[static_cast<size_t>(
                model.var_index("X[" + std::to_string(j + 1) + ",0]"))],
            v[static_cast<size_t>(
                model.var_index("X[" + std::to_string(j + 1) + ",1]"))]},
           balls[static_cast<size_t>(j)]});
    }
    const int two_p = 2 * std::stoi(model.meta_value("p"));
    for (const Edge& e : net.edges) {
      const int ei = net.edge_index(e.id);
      for (int l = 0; l < two_p - 1; ++l)
        model_coverage +=
            net.edge_wlength(ei) *
            v[static_cast<size_t>(model.var_index(
                "eta[" + e.id + "," + std::to_string(l + 1) + "]"))];
    }
    // does any single device actually cover each claimed subsegment?
    const int p_total = std::stoi(model.meta_value("p"));
    for (const Edge& e : net.edges) {
      std::vector<double> srt;
      for (int l = 0; l < two_p; ++l) {
        double s = 0.0;
        for (int j = 0; j < p_total; ++j)
          for (int sbit = 0; sbit < 2; ++sbit)
            s += v[static_cast<size_t>(model.var_index(
                     "lam[" + std::to_string(j + 1) + "," + e.id + "," +
                     std::to_string(sbit) + "]"))] *
                 v[static_cast<size_t>(model.var_index(
                     "xi[" + std::to_string(j + 1) + "," + e.id + "," +
                     std::to_string(l + 1) + "," + std::to_string(sbit) +
                     "]"))];
        srt.push_back(s);
      }
      for (int l = 0; l < two_p - 1; ++l) {
        if (v[static_cast<size_t>(model.var_index(
                "w[" + e.id + "," + std::to_string(l + 1) + "]"))] < 0.5)
          continue;
        bool ok = false;
        for (int j = 0; j < p_total && !ok; ++j) {
          const double l0 = v[static_cast<size_t>(model.var_index(
              "lam[" + std::to_string(j + 1) + "," + e.id + ",0]"))];
          const double l1 = v[static_cast<size_t>(model.var_index(
              "lam[" + std::to_string(j + 1) + "," + e.id + ",1]"))];
          ok = l0 <= srt[static_cast<size_t>(l)] + 1e-9 &&
               l1 >= srt[static_cast<size_t>(l) + 1] - 1e-9 && l1 - l0 > 1e-12;
        }
        if (!ok)
          res.w_flags.push_back("w[" + e.id + "," + std::to_string(l + 1) +
                                "] set but no single device covers it");
      }
    }
  }
  res.geometric = evaluate(net, devices);
  res.linearization_slack =
      model_coverage - res.geometric.covered_weighted_length;
  return res;
}

}  // namespace netcover
