// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "interactee/bleu.hpp"
#include "interactee/consensus.hpp"
#include "interactee/evaluation.hpp"
#include "interactee/interaction_types.hpp"
#include "interactee/kmeans.hpp"
#include "interactee/knn.hpp"
#include "interactee/mdn.hpp"
#include "interactee/seam_carving.hpp"
#include "interactee/serialization.hpp"
#include "oracles.hpp"

using namespace interactee;
namespace fs = std::filesystem;

namespace {

// Tolerances.
constexpr double kGeometryRelTol = 1e-9;
constexpr double kIouOracleTol = 1e-12;
constexpr double kCentroidTol = 1e-6;
constexpr double kKnnWeightTol = 1e-12;
constexpr double kKnnSmoothPosErr = 0.05;
constexpr double kGradCheckEps = 1e-5;
constexpr double kGradCheckTol = 1e-4;
constexpr double kConstantTargetTol = 0.05;
constexpr double kBimodalTol = 0.1;
constexpr double kCltSigmas = 4.0;
constexpr double kCenterTol = 1e-12;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = "failed: " + what;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

DescriptorVector vec(const std::vector<double>& v) {
  static const auto layout3 = std::make_shared<const Layout>(std::vector<std::pair<std::string, std::size_t>>{{"x", 3}});
  static const auto layout2 = std::make_shared<const Layout>(std::vector<std::pair<std::string, std::size_t>>{{"x", 2}});
  static const auto layout4 = std::make_shared<const Layout>(std::vector<std::pair<std::string, std::size_t>>{{"x", 4}});
  if (v.size() == 2) return DescriptorVector(layout2, v);
  if (v.size() == 3) return DescriptorVector(layout3, v);
  return DescriptorVector(layout4, v);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// 1
Outcome geometry_round_trip() {
  Outcome o;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pos(-500, 500), size(5, 300), zoom(0.1, 10), shift(-1000, 1000);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const BoundingBox person(pos(rng), pos(rng), size(rng), size(rng));
    const BoundingBox inter = BoundingBox::square({pos(rng), pos(rng)}, size(rng));
    const LocalizationParams y = normalize_localization(person, inter);
    const BoundingBox back = denormalize_to_box(y, person);
    const double s = person_scale(person);
    worst = std::max({worst, std::abs(back.center().x - inter.center().x) / std::max(std::abs(inter.center().x), s),
                      std::abs(back.center().y - inter.center().y) / std::max(std::abs(inter.center().y), s),
                      rel(back.area(), inter.area()) * std::max(1.0, inter.area()) / inter.area()});

    const double c = zoom(rng), tx = shift(rng), ty = shift(rng);
    const LocalizationParams z = normalize_localization(person.scaled(c).translated(tx, ty), inter.scaled(c).translated(tx, ty));
    worst = std::max({worst, rel(z.dx, y.dx), rel(z.dy, y.dy), std::abs(z.a - y.a) / y.a});
  }
  o.require(worst <= kGeometryRelTol, "relative error " + fmt("%.3g", worst));
  if (o.pass) o.detail = "max relative error " + fmt("%.2e", worst);
  return o;
}

// 2
Outcome iou_axioms() {
  Outcome o;
  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const BoundingBox a = testing::random_box(rng), b = testing::random_box(rng);
    const double ab = iou(a, b);
    o.require(ab == iou(b, a), "symmetry");
    o.require(ab >= 0.0 && ab <= 1.0, "range");
    o.require(iou(a, a) == 1.0, "identity");
    o.require(iou(a, b.translated(a.x_max() - b.x_min() + 1.0, 0.0)) == 0.0, "disjoint");
    worst = std::max(worst, std::abs(ab - testing::reference_iou(a.x_min(), a.y_min(), a.width(), a.height(), b.x_min(),
                                                                 b.y_min(), b.width(), b.height())));
  }
  o.require(worst <= kIouOracleTol, "oracle disagreement " + fmt("%.3g", worst));
  o.require(iou(BoundingBox(0, 0, 2, 2), BoundingBox(1, 0, 2, 2)) == 1.0 / 3.0, "hand case 1/3");
  if (o.pass) o.detail = "10000 pairs, max |iou - oracle| " + fmt("%.2e", worst) + ", hand case exactly 1/3";
  return o;
}

// 3
Outcome consensus_planted() {
  Outcome o;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1), jitter(-3, 3);
  std::uniform_int_distribution<int> members(4, 6), outliers(1, 2);
  const double W = 640, H = 480;
  int in_cluster = 0, oracle_match = 0;
  for (int t = 0; t < 500; ++t) {
    const double w = 30 + 80 * u(rng), h = 30 + 80 * u(rng);
    const double x = 200 + 100 * u(rng), y = 150 + 80 * u(rng);
    AnnotationSet a{"img", 0, {}};
    const int m = members(rng), k = outliers(rng);
    for (int i = 0; i < m; ++i) a.boxes.emplace_back(x + jitter(rng), y + jitter(rng), w + jitter(rng), h + jitter(rng));
    // Outliers near opposite image corners.
    const BoundingBox corners[2] = {BoundingBox(5 + 5 * u(rng), 5 + 5 * u(rng), 20, 20),
                                    BoundingBox(W - 40 + 5 * u(rng), H - 40 + 5 * u(rng), 25, 25)};
    for (int i = 0; i < k; ++i) a.boxes.push_back(corners[i]);
    std::shuffle(a.boxes.begin(), a.boxes.end(), rng);

    std::vector<std::size_t> planted;
    for (std::size_t i = 0; i < a.boxes.size(); ++i) {
      if (a.boxes[i] != corners[0] && a.boxes[i] != corners[1]) planted.push_back(i);
    }
    const std::size_t got = consensus_index(a, default_consensus_bandwidth(W, H));
    if (std::find(planted.begin(), planted.end(), got) != planted.end()) ++in_cluster;
    if (got == testing::brute_force_max_mean_iou(a.boxes, planted)) ++oracle_match;
  }
  o.require(in_cluster == 500, std::to_string(in_cluster) + "/500 inside the planted cluster");
  o.require(oracle_match == 500, std::to_string(oracle_match) + "/500 equal to the max-mean-IOU member");
  if (o.pass) o.detail = "500/500 planted members, 500/500 equal to the brute-force max-mean-IOU member";
  return o;
}

// 4
Outcome quantizer() {
  Outcome o;
  o.require(kInteractionTypeCount == 40, "type count");

  // Ten (dx, dy) groups of four with four area levels.
  const double offsets[4][2] = {{0.01, 0.0}, {-0.01, 0.0}, {0.0, 0.02}, {0.0, -0.02}};
  std::vector<LocalizationParams> ex;
  for (int g = 0; g < 10; ++g)
    for (int k = 0; k < 4; ++k) ex.push_back({3.0 * (g % 5) + offsets[k][0], 3.0 * (g / 5) + offsets[k][1], 0.1 + 0.3 * (g % 4) + 0.001 * k});
  std::vector<Point2> xy_means(10, {0, 0});
  std::vector<double> area_means(4, 0.0);
  std::vector<int> area_counts(4, 0);
  for (int g = 0; g < 10; ++g) {
    for (int k = 0; k < 4; ++k) {
      xy_means[g].x += ex[g * 4 + k].dx / 4.0;
      xy_means[g].y += ex[g * 4 + k].dy / 4.0;
      area_means[g % 4] += ex[g * 4 + k].a;
      ++area_counts[g % 4];
    }
  }
  for (int a = 0; a < 4; ++a) area_means[a] /= area_counts[a];

  const Quantizer q = fit_quantizer(ex, 4);
  double worst = 0.0;
  for (const auto& m : xy_means) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : q.xy_centroids) best = std::min(best, std::hypot(c.x - m.x, c.y - m.y));
    worst = std::max(worst, best);
  }
  for (double m : area_means) {
    double best = std::numeric_limits<double>::infinity();
    for (double c : q.area_centroids) best = std::min(best, std::abs(c - m));
    worst = std::max(worst, best);
  }
  o.require(worst <= kCentroidTol, "centroid error " + fmt("%.3g", worst));

  // Lloyd objective on a random instance and on the planted one.
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> ua(0.01, 2.0);
  std::vector<LocalizationParams> random_ex(2000);
  for (auto& p : random_ex) p = {g(rng), g(rng), ua(rng)};
  const Quantizer r = fit_quantizer(random_ex, 5);
  for (const auto* hist : {&q.xy_distortion_history, &q.area_distortion_history, &r.xy_distortion_history, &r.area_distortion_history}) {
    for (std::size_t i = 1; i < hist->size(); ++i) o.require((*hist)[i] <= (*hist)[i - 1], "Lloyd objective increased");
  }

  // assign_type against a brute-force scan of all 40 (xy, area) pairs.
  std::uniform_real_distribution<double> ux(-3, 3);
  int agree = 0;
  for (int i = 0; i < 10000; ++i) {
    const LocalizationParams p{ux(rng), ux(rng), ua(rng)};
    std::size_t best_id = 0;
    std::pair<double, double> best{std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t x = 0; x < 10; ++x) {
      for (std::size_t a = 0; a < 4; ++a) {
        const std::pair<double, double> d{std::hypot(p.dx - r.xy_centroids[x].x, p.dy - r.xy_centroids[x].y),
                                          std::abs(p.a - r.area_centroids[a])};
        if (d < best) {
          best = d;
          best_id = x * 4 + a;
        }
      }
    }
    agree += assign_type(r, p).type_id() == best_id ? 1 : 0;
  }
  o.require(agree == 10000, std::to_string(agree) + "/10000 assign_type agreements");
  if (o.pass) {
    o.detail = "40 types, centroid error " + fmt("%.2e", worst) + ", objective monotone, 10000/10000 assignments agree";
  }
  return o;
}

// 5
Outcome knn() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);

  // Exact match with k = 1.
  std::vector<TrainingExample> small;
  for (int i = 0; i < 30; ++i) small.push_back({vec({u(rng), u(rng), u(rng)}), {u(rng) - 0.5, u(rng) - 0.5, 0.1 + u(rng)}});
  const KnnModel one = KnnModel::fit(small, 1);
  for (const auto& e : small) o.require(one.predict(e.descriptor).params == e.params, "k=1 exact match");

  // Equidistant pair.
  const std::vector<TrainingExample> pair{{vec({-1, 0, 0}), {0.2, -0.4, 0.3}}, {vec({1, 0, 0}), {0.6, 0.1, 0.5}}};
  const auto mid = KnnModel::fit(pair, 2).predict(vec({0, 0, 0})).params;
  o.require(mid == LocalizationParams{(0.2 + 0.6) / 2, (-0.4 + 0.1) / 2, (0.3 + 0.5) / 2}, "equidistant mean");

  // Distances 0 and ln 3 (unit scale) give weights 3/4 and 1/4.
  const std::vector<TrainingExample> hand{{vec({0, 0, 0}), {1, 0, 1}}, {vec({std::log(3.0), 0, 0}), {0, 1, 2}}};
  BlockNormalizer unit{{"x"}, {1.0}};
  const KnnModel w(hand, unit, 2);
  const auto pred = w.predict(vec({0, 0, 0}));
  o.require(std::abs(pred.neighbors[0].weight - 0.75) <= kKnnWeightTol && std::abs(pred.neighbors[1].weight - 0.25) <= kKnnWeightTol,
            "hand weights");
  o.require(std::abs(pred.params.dx - 0.75) <= kKnnWeightTol && std::abs(pred.params.a - 1.25) <= kKnnWeightTol, "hand prediction");

  // Smooth generator, 5000 train / 500 test.
  auto f = [](double x0, double x1, double x2) -> LocalizationParams {
    return {0.5 * std::sin(2.0 * x0) + 0.2 * x1, 0.4 * x1 - 0.3 * x2 * x2, 0.1 + 0.3 * x2};
  };
  std::vector<TrainingExample> train;
  for (int i = 0; i < 5000; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng);
    train.push_back({vec({a, b, c}), f(a, b, c)});
  }
  const KnnModel model = KnnModel::fit(train, kDefaultNeighbors, kDefaultMaxPairs, 5);
  double err = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng);
    const auto truth = f(a, b, c);
    const auto p = model.predict(vec({a, b, c})).params;
    err += std::hypot(p.dx - truth.dx, p.dy - truth.dy) / 500.0;
  }
  o.require(err < kKnnSmoothPosErr, "smooth-function position error " + fmt("%.4f", err));
  if (o.pass) o.detail = "exact match, symmetric mean, 0.75/0.25 weights; smooth-set position error " + fmt("%.4f", err);
  return o;
}

// 6
Outcome mdn_gradients() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto net = mdn_init(4, {8}, 3, seed);
    const TrainingExample ex{vec({g(rng), g(rng), g(rng), g(rng)}), {0.5 * g(rng), 0.5 * g(rng), 0.3 + 0.1 * std::abs(g(rng))}};
    worst = std::max(worst, gradient_check(net, ex, kGradCheckEps));
  }
  o.require(worst < kGradCheckTol, "max relative error " + fmt("%.3g", worst));
  if (o.pass) o.detail = "20 networks 4-8-(3 components), max relative error " + fmt("%.2e", worst);
  return o;
}

// 7
Outcome mdn_training() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  const PersonInstance person{"p", BoundingBox(0, 0, 10, 10), 100, 100};

  // Constant targets.
  const LocalizationParams c{0.6, -0.3, 0.4};
  std::vector<TrainingExample> constant;
  for (int i = 0; i < 64; ++i) constant.push_back({vec({u(rng), u(rng)}), c});
  TrainConfig cfg;
  cfg.iterations = 4000;
  cfg.seed = 1;
  const auto rc = train(mdn_init(2, {16}, 3, 4), constant, cfg);
  double worst_c = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto p = mdn_predict(rc.net, std::vector<double>{u(rng), u(rng)}, person).params;
    worst_c = std::max({worst_c, std::abs(p.dx - c.dx), std::abs(p.dy - c.dy), std::abs(p.a - c.a)});
  }
  o.require(worst_c < kConstantTargetTol, "constant target error " + fmt("%.4f", worst_c));

  // Two modes independent of the input.
  const LocalizationParams m1{0.5, 0.2, 0.3}, m2{-0.5, -0.2, 0.6};
  std::normal_distribution<double> noise(0.0, 0.02);
  std::vector<TrainingExample> bimodal;
  for (int i = 0; i < 400; ++i) {
    const auto& m = i % 2 ? m1 : m2;
    bimodal.push_back({vec({u(rng), u(rng)}), {m.dx + noise(rng), m.dy + noise(rng), m.a + noise(rng)}});
  }
  TrainConfig bcfg;
  bcfg.iterations = 6000;
  bcfg.learning_rate = 0.01;
  bcfg.seed = 2;
  const auto rb = train(mdn_init(2, {16}, 3, 5), bimodal, bcfg);
  const auto gmm = mdn_forward(rb.net, std::vector<double>{0.1, -0.2});
  auto recovered = [&](const LocalizationParams& m) {
    for (std::size_t k = 0; k < gmm.size(); ++k) {
      const auto& mu = gmm.means[k];
      if (gmm.weights[k] > 0.2 && std::abs(mu[0] - m.dx) < kBimodalTol && std::abs(mu[1] - m.dy) < kBimodalTol &&
          std::abs(mu[2] - m.a) < kBimodalTol)
        return true;
    }
    return false;
  };
  o.require(recovered(m1) && recovered(m2), "bimodal modes");

  // Smoothed loss on a noisy linear set, full-batch steps.
  std::vector<TrainingExample> linear;
  for (int i = 0; i < 128; ++i) {
    const double a = u(rng), b = u(rng);
    linear.push_back({vec({a, b}), {0.3 * a - 0.2 * b + noise(rng), 0.1 * b + noise(rng), 0.4 + 0.1 * a + noise(rng)}});
  }
  TrainConfig lcfg;
  lcfg.iterations = 3000;
  lcfg.batch_size = linear.size();
  lcfg.seed = 3;
  const auto rl = train(mdn_init(2, {16}, 3, 6), linear, lcfg);
  const auto blocks = testing::block_means(rl.loss_history, 100);
  std::size_t rises = 0;
  for (std::size_t i = 1; i < blocks.size(); ++i) rises += blocks[i] > blocks[i - 1] ? 1 : 0;
  o.require(rises == 0, std::to_string(rises) + " increases in the 100-iteration loss means");
  if (o.pass) {
    o.detail = "constant-target error " + fmt("%.4f", worst_c) + ", both modes recovered, smoothed loss " +
               fmt("%.3f", blocks.front()) + " -> " + fmt("%.3f", blocks.back()) + " without increases";
  }
  return o;
}

// 8
Outcome baselines() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> pos(0, 300), size(5, 200);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PersonInstance p{"p", BoundingBox(pos(rng), pos(rng), size(rng), size(rng)), 640, 480};
    const BoundingBox b = near_person_baseline(p);
    worst = std::max(worst, std::abs(b.area() / p.person_box.area() - kNearPersonAreaRatio));
    const Point2 bc = b.center(), pc = p.person_box.center();
    o.require(std::hypot(bc.x - pc.x, bc.y - pc.y) <= kCenterTol * person_scale(p.person_box), "near-person center");
  }
  o.require(kNearPersonAreaRatio == 0.74, "ratio constant");
  o.require(worst <= 1e-15, "area ratio off by " + fmt("%.3g", worst));

  const PersonInstance p{"p", BoundingBox(0, 0, 10, 10), 640, 480};
  const int n = 10000;
  double sx = 0, sy = 0, sa = 0;
  for (int i = 0; i < n; ++i) {
    const BoundingBox b = random_baseline(p, rng);
    sx += b.center().x / n;
    sy += b.center().y / n;
    sa += b.area() / (640.0 * 480.0) / n;
  }
  const double zx = std::abs(sx - 320.0) / (640.0 / std::sqrt(12.0 * n));
  const double zy = std::abs(sy - 240.0) / (480.0 / std::sqrt(12.0 * n));
  const double za = std::abs(sa - 0.525) / (0.95 / std::sqrt(12.0 * n));
  o.require(zx < kCltSigmas && zy < kCltSigmas && za < kCltSigmas, "CLT z-scores " + fmt("%.2f", std::max({zx, zy, za})));
  if (o.pass) o.detail = "area ratio 0.74 within " + fmt("%.1e", worst) + "; random baseline z-scores " + fmt("%.2f", zx) + ", " +
                          fmt("%.2f", zy) + ", " + fmt("%.2f", za);
  return o;
}

// 9
Outcome seam_carving() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> v(0, 9), dim(2, 5), hdim(1, 5);
  for (int t = 0; t < 200; ++t) {
    EnergyMap e(static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(hdim(rng)));
    for (auto& x : e.data()) x = v(rng);
    o.require(find_min_vertical_seam(e).total == testing::brute_force_min_seam(e), "DP seam total vs enumeration");
  }

  std::uniform_int_distribution<int> px(0, 255);
  auto random_image = [&](std::size_t w, std::size_t h) {
    RgbImage img(w, h);
    for (auto& p : img.data()) p = {static_cast<unsigned char>(px(rng)), static_cast<unsigned char>(px(rng)), static_cast<unsigned char>(px(rng))};
    return img;
  };
  for (int t = 0; t < 20; ++t) {
    const RgbImage img = random_image(12, 10);
    const std::size_t tw = 2 + static_cast<std::size_t>(px(rng)) % 11, th = 2 + static_cast<std::size_t>(px(rng)) % 9;
    const std::vector<BoundingBox> boxes{BoundingBox(2, 2, 4, 4)};
    const RgbImage out = retarget(img, tw, th, boxes);
    o.require(out.width() == tw && out.height() == th, "exact target dimensions");
  }

  // Flat 3-column stripe at the left, protected textured box on the right.
  RgbImage img = random_image(10, 10);
  for (std::size_t y = 0; y < 10; ++y)
    for (std::size_t x = 0; x < 4; ++x) img(x, y) = {90, 90, 90};
  const BoundingBox protect(5, 0, 4, 10);
  const auto res = retarget_detailed(img, 8, 10, std::vector<BoundingBox>{protect});
  std::size_t hits = 0;
  for (const auto& p : res.removed) hits += protect.contains({p.x + 0.5, p.y + 0.5}) ? 1 : 0;
  o.require(hits == 0, std::to_string(hits) + " protected pixels removed");
  for (std::size_t step = 0; step < res.seam_totals.size(); ++step) {
    const auto before = retarget_detailed(img, 10 - step, 10, std::vector<BoundingBox>{protect});
    const EnergyMap e = boost_energy(gradient_energy(luminance(before.image)), before.protected_boxes);
    o.require(res.seam_totals[step] == testing::brute_force_min_seam(e), "fixture seam total vs enumeration");
  }

  EnergyMap spot(2, 1, 0.0);
  spot(1, 0) = 1.0;
  const auto boosted = boost_energy(spot, std::vector<BoundingBox>{BoundingBox(0, 0, 2, 1)});
  o.require(boosted(0, 0) == 25.0 && boosted(1, 0) == 30.0, "boost spot values");
  if (o.pass) o.detail = "200/200 grids match enumeration, exact dims, 0 protected pixels removed, boost 0->25 and 1->30";
  return o;
}

// 10
Outcome bleu_checks() {
  Outcome o;
  const std::vector<std::string> cand{"a", "man", "rides", "a", "horse"};
  o.require(bleu(cand, std::vector<std::vector<std::string>>{cand}).combined == 1.0, "identity");
  o.require(bleu(cand, std::vector<std::vector<std::string>>{{"dogs", "bark"}}).per_n[0] == 0.0, "disjoint");
  o.require(bleu({"the", "the", "the"}, std::vector<std::vector<std::string>>{{"the", "cat"}}).precisions[0] == 1.0 / 3.0, "clipping");

  std::mt19937_64 rng(10);
  const std::vector<std::string> vocab{"a", "the", "man", "woman", "dog", "ball", "horse", "rides", "holds", "on", "with", "red"};
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1), len(1, 15);
  auto sentence = [&] {
    std::vector<std::string> s(len(rng));
    for (auto& w : s) w = vocab[word(rng)];
    return s;
  };
  int monotone = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto c = sentence();
    std::vector<std::vector<std::string>> refs{sentence()};
    const auto before = bleu(c, refs);
    refs.push_back(c);
    const auto after = bleu(c, refs);
    bool ok = after.combined >= before.combined;
    for (std::size_t n = 0; n < before.per_n.size(); ++n) ok = ok && after.per_n[n] >= before.per_n[n];
    monotone += ok ? 1 : 0;
  }
  o.require(monotone == 1000, std::to_string(monotone) + "/1000 monotone");
  if (o.pass) o.detail = "identity 1.0, disjoint 0, p1 = 1/3, 1000/1000 monotone";
  return o;
}

// 11
std::string read_bytes(const fs::path& p) { return read_text_file(p); }

int shell(const std::string& dir, const std::string& args) {
  const std::string cmd = "cd '" + dir + "' && '" + std::string(INTERACTEE_CLI_PATH) + "' " + args + " >> log.txt 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome cli_pipeline() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "interactee_acceptance";
  fs::remove_all(root);
  const std::vector<std::string> steps{
      "synth --out-dir . --images 500 --seed 11",
      "consensus --dataset dataset.json --out gt.json",
      "quantize --dataset gt.json --out quantizer.json --report types.json --seed 11",
      "fit-knn --dataset gt.json --out knn.json --seed 11",
      "predict --dataset gt.json --model knn --model-file knn.json --out predictions.json --heatmap-dir heatmaps",
      "evaluate --dataset gt.json --predictions predictions.json --out report.json --csv report.csv --seed 11"};
  for (const char* run : {"run1", "run2"}) {
    const fs::path dir = root / run;
    fs::create_directories(dir);
    for (const auto& s : steps) {
      const int code = shell(dir.string(), s);
      o.require(code == 0, "'" + s + "' exited with " + std::to_string(code));
      if (!o.pass) return o;
    }
  }

  std::size_t files = 0, differ = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root / "run1")) {
    if (!entry.is_regular_file()) continue;
    const fs::path other = root / "run2" / fs::relative(entry.path(), root / "run1");
    ++files;
    if (!fs::exists(other) || read_bytes(entry.path()) != read_bytes(other)) ++differ;
  }
  o.require(differ == 0, std::to_string(differ) + " of " + std::to_string(files) + " files differ between runs");

  const Json report = read_json_file(root / "run1" / "report.json");
  const auto& m = report.at("methods");
  const double knn_pos = m.at("knn").at("mean_position_error"), knn_iou = m.at("knn").at("mean_iou");
  for (const char* base : {"near_person", "random"}) {
    o.require(knn_pos < m.at(base).at("mean_position_error").get<double>(), std::string("position error vs ") + base);
    o.require(knn_iou > m.at(base).at("mean_iou").get<double>(), std::string("IOU vs ") + base);
  }
  if (o.pass) {
    o.detail = std::to_string(files) + " files byte-identical; knn pos " + fmt("%.4f", knn_pos) + " / iou " + fmt("%.4f", knn_iou) +
               ", near-person " + fmt("%.4f", m.at("near_person").at("mean_position_error").get<double>()) + " / " +
               fmt("%.4f", m.at("near_person").at("mean_iou").get<double>()) + ", random " +
               fmt("%.4f", m.at("random").at("mean_position_error").get<double>()) + " / " +
               fmt("%.4f", m.at("random").at("mean_iou").get<double>());
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "geometry round trip", 1, geometry_round_trip},
      {2, "IOU axioms", 1, iou_axioms},
      {3, "annotation consensus", 5, consensus_planted},
      {4, "interaction-type quantizer", 5, quantizer},
      {5, "KNN predictor", 30, knn},
      {6, "MDN gradients", 30, mdn_gradients},
      {7, "MDN training", 120, mdn_training},
      {8, "baselines", 5, baselines},
      {9, "seam carving", 30, seam_carving},
      {10, "BLEU", 5, bleu_checks},
      {11, "CLI pipeline", 120, cli_pipeline},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      o.pass = false;
      o.detail += " (over the time limit)";
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s criterion %2d  %-28s %7.2fs / %4.0fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, c.limit_seconds,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
