#pragma once

#include "flep/image.hpp"

namespace flep {

/// Level-1 Haar subbands, each (width/2) x (height/2).
struct DwtPlanes {
  RealPlane ll;
  RealPlane lh;
  RealPlane hl;
  RealPlane hh;
};

// Orthonormal Haar on each 2x2 cell [[a,b],[c,d]]:
//   LL=(a+b+c+d)/2  LH=(a-b+c-d)/2  HL=(a+b-c-d)/2  HH=(a-b-c+d)/2
DwtPlanes dwt2(const RealPlane& img);
RealPlane idwt2(const DwtPlanes& planes);

// Blends the subbands alpha*scrambled + (1-alpha)*secret and transforms back.
RealPlane blend_encode(const GrayImage& scrambled, const GrayImage& secret, double alpha);
RealPlane blend_encode(const RealPlane& scrambled, const GrayImage& secret, double alpha);

// Removes (1-alpha)*secret in the wavelet domain and divides by alpha.
RealPlane blend_decode(const RealPlane& encoded, const GrayImage& secret, double alpha);

}  // namespace flep
