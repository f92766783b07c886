#include "flep/wavelet.hpp"

#include <cmath>
#include <string>

#include "flep/errors.hpp"

namespace flep {

DwtPlanes dwt2(const RealPlane& img) {
  const std::size_t w = img.width(), h = img.height();
  if (w % 2 != 0 || h % 2 != 0) {
    throw DimensionError("dwt2 needs even dimensions, got " + std::to_string(w) + "x" +
                         std::to_string(h));
  }
  const std::size_t hw = w / 2, hh = h / 2;
  std::vector<double> ll(hw * hh), lh(hw * hh), hl(hw * hh), dd(hw * hh);
  for (std::size_t y = 0; y < hh; ++y) {
    for (std::size_t x = 0; x < hw; ++x) {
      const double a = img.at(2 * x, 2 * y), b = img.at(2 * x + 1, 2 * y);
      const double c = img.at(2 * x, 2 * y + 1), d = img.at(2 * x + 1, 2 * y + 1);
      const std::size_t k = y * hw + x;
      ll[k] = (a + b + c + d) / 2;
      lh[k] = (a - b + c - d) / 2;
      hl[k] = (a + b - c - d) / 2;
      dd[k] = (a - b - c + d) / 2;
    }
  }
  return {RealPlane(hw, hh, std::move(ll)), RealPlane(hw, hh, std::move(lh)),
          RealPlane(hw, hh, std::move(hl)), RealPlane(hw, hh, std::move(dd))};
}

RealPlane idwt2(const DwtPlanes& p) {
  const std::size_t hw = p.ll.width(), hh = p.ll.height();
  for (const RealPlane* band : {&p.lh, &p.hl, &p.hh}) {
    if (band->width() != hw || band->height() != hh) {
      throw DimensionError("idwt2: subband dimensions differ");
    }
  }
  const std::size_t w = 2 * hw;
  std::vector<double> out(w * 2 * hh);
  for (std::size_t y = 0; y < hh; ++y) {
    for (std::size_t x = 0; x < hw; ++x) {
      const double s = p.ll.at(x, y), u = p.lh.at(x, y), v = p.hl.at(x, y), t = p.hh.at(x, y);
      out[(2 * y) * w + 2 * x] = (s + u + v + t) / 2;
      out[(2 * y) * w + 2 * x + 1] = (s - u + v - t) / 2;
      out[(2 * y + 1) * w + 2 * x] = (s + u - v - t) / 2;
      out[(2 * y + 1) * w + 2 * x + 1] = (s - u - v + t) / 2;
    }
  }
  return RealPlane(w, 2 * hh, std::move(out));
}

namespace {

RealPlane combine(const RealPlane& a, const RealPlane& b, double wa, double wb) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = wa * a.values()[i] + wb * b.values()[i];
  return RealPlane(a.width(), a.height(), std::move(out));
}

DwtPlanes combine(const DwtPlanes& a, const DwtPlanes& b, double wa, double wb) {
  return {combine(a.ll, b.ll, wa, wb), combine(a.lh, b.lh, wa, wb), combine(a.hl, b.hl, wa, wb),
          combine(a.hh, b.hh, wa, wb)};
}

void check_pair(const RealPlane& a, const GrayImage& secret) {
  if (a.width() != secret.width() || a.height() != secret.height()) {
    throw DimensionError("secret image is " + std::to_string(secret.width()) + "x" +
                         std::to_string(secret.height()) + ", data is " +
                         std::to_string(a.width()) + "x" + std::to_string(a.height()));
  }
}

}  // namespace

RealPlane blend_encode(const RealPlane& scrambled, const GrayImage& secret, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw KeyError("blend alpha must lie in (0, 1]");
  check_pair(scrambled, secret);
  const auto a = dwt2(scrambled);
  const auto b = dwt2(RealPlane::from_image(secret));
  return idwt2(combine(a, b, alpha, 1.0 - alpha));
}

RealPlane blend_encode(const GrayImage& scrambled, const GrayImage& secret, double alpha) {
  return blend_encode(RealPlane::from_image(scrambled), secret, alpha);
}

RealPlane blend_decode(const RealPlane& encoded, const GrayImage& secret, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw KeyError("blend alpha must lie in (0, 1]");
  check_pair(encoded, secret);
  const auto a = dwt2(encoded);
  const auto b = dwt2(RealPlane::from_image(secret));
  return idwt2(combine(a, b, 1.0 / alpha, -(1.0 - alpha) / alpha));
}

}  // namespace flep
