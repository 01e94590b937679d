#include "pfgate/operators.hpp"

#include <cmath>
#include <sstream>

#include "pfgate/errors.hpp"

namespace pfgate {

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::Q1: return "Q1";
    case Mode::Coupler: return "C";
    case Mode::Q2: return "Q2";
  }
  return "?";
}

void ModeSpec::validate() const {
  if (!(frequency > 0.0)) throw InvalidArgument("mode frequency must be positive");
  if (!std::isfinite(anharmonicity)) throw InvalidArgument("mode anharmonicity must be finite");
  if (levels < 2) throw InvalidArgument("mode truncation needs at least 2 levels");
}

int BasisLabel::operator[](Mode m) const {
  switch (m) {
    case Mode::Q1: return q1;
    case Mode::Coupler: return coupler;
    case Mode::Q2: return q2;
  }
  return 0;
}

std::string BasisLabel::str() const {
  std::ostringstream os;
  os << '|' << q1 << coupler << q2 << '>';
  return os.str();
}

HilbertSpace::HilbertSpace(std::array<int, 3> dims) : dims_(dims) {
  for (int d : dims_)
    if (d < 2) throw InvalidArgument("each mode needs dimension >= 2");
}

bool HilbertSpace::contains(const BasisLabel& l) const {
  return l.q1 >= 0 && l.q1 < dims_[0] && l.coupler >= 0 && l.coupler < dims_[1] && l.q2 >= 0 &&
         l.q2 < dims_[2];
}

int HilbertSpace::index(const BasisLabel& l) const {
  if (!contains(l)) throw InvalidArgument("basis label " + l.str() + " outside truncation");
  return (l.q1 * dims_[1] + l.coupler) * dims_[2] + l.q2;
}

BasisLabel HilbertSpace::label(int index) const {
  if (index < 0 || index >= size()) throw InvalidArgument("flat index outside space");
  BasisLabel l;
  l.q2 = index % dims_[2];
  index /= dims_[2];
  l.coupler = index % dims_[1];
  l.q1 = index / dims_[1];
  return l;
}

RealMatrix destroy(int dim) {
  if (dim < 2) throw InvalidArgument("destroy: dimension must be >= 2");
  RealMatrix a = RealMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

RealMatrix embed(const RealMatrix& op, Mode mode, const HilbertSpace& space) {
  const int d = space.dim(mode);
  if (op.rows() != d || op.cols() != d)
    throw InvalidArgument(std::string("embed: operator dimension does not match mode ") +
                          mode_name(mode));
  // left = product of dims before the mode, right = after it.
  int left = 1, right = 1;
  for (int m = 0; m < static_cast<int>(mode); ++m) left *= space.dims()[m];
  for (int m = static_cast<int>(mode) + 1; m < 3; ++m) right *= space.dims()[m];

  const int n = space.size();
  RealMatrix out = RealMatrix::Zero(n, n);
  for (int l = 0; l < left; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const double v = op(i, j);
        if (v == 0.0) continue;
        for (int r = 0; r < right; ++r)
          out((l * d + i) * right + r, (l * d + j) * right + r) = v;
      }
  return out;
}

RealMatrix duffing_hamiltonian(const ModeSpec& mode) {
  mode.validate();
  RealMatrix h = RealMatrix::Zero(mode.levels, mode.levels);
  for (int n = 0; n < mode.levels; ++n) h(n, n) = mode.energy(n);
  return h;
}

RealVector excitation_numbers(const HilbertSpace& space) {
  RealVector n(space.size());
  for (int i = 0; i < space.size(); ++i) n(i) = space.label(i).excitations();
  return n;
}

}  // namespace pfgate
