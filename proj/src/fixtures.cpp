#include "shiftlab/fixtures.hpp"

namespace shiftlab {

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

std::vector<Fixture> build() {
  std::vector<Fixture> out;
  out.push_back({"A",
                 "*-paranormal, norm-attaining shift on two branches: weights 1/9 | 1/3, 1/4, then 2",
                 TreeSpec{"u0",
                          {},
                          {RaySpec{"r1", "u0", {q(1, 9)}, ConstantTail{q(2)}},
                           RaySpec{"r2", "u0", {q(1, 3), q(1, 4)}, ConstantTail{q(2)}}}}});
  out.push_back({"B",
                 "quasi-*-paranormal shift on two branches: weights 1, then 2 | 1, 2, 1, then 4",
                 TreeSpec{"u0",
                          {},
                          {RaySpec{"r1", "u0", {q(1)}, ConstantTail{q(2)}},
                           RaySpec{"r2", "u0", {q(1), q(2), q(1)}, ConstantTail{q(4)}}}}});
  out.push_back({"C",
                 "single path with weights 1, then 1 - 2^(1-j); its adjoint is not quasi-*-paranormal",
                 TreeSpec{"1", {}, {RaySpec{"path", "1", {q(1)}, GeometricTail{q(1), q(2), q(1, 2)}}}}});
  out.push_back({"D",
                 "diagonal example: two constant branches with weights 1 and 2",
                 TreeSpec{"u0",
                          {},
                          {RaySpec{"r1", "u0", {}, ConstantTail{q(1)}},
                           RaySpec{"r2", "u0", {}, ConstantTail{q(2)}}}}});
  out.push_back({"E",
                 "diagonal example: branch i has weights i, i, then i - 1/(j-1)",
                 TreeSpec{"u0",
                          {},
                          {RaySpec{"r1", "u0", {q(1), q(1)}, AffineReciprocalTail{q(1), q(1), q(1)}},
                           RaySpec{"r2", "u0", {q(2), q(2)}, AffineReciprocalTail{q(2), q(1), q(1)}}}}});
  return out;
}

}  // namespace

const std::vector<Fixture>& list_fixtures() {
  static const std::vector<Fixture> corpus = build();
  return corpus;
}

const Fixture& fixture(const std::string& name) {
  for (const auto& f : list_fixtures()) {
    if (f.name == name) return f;
  }
  throw UnknownFixture(name);
}

}  // namespace shiftlab
