#include "framepot/noncomm.hpp"

#include <Eigen/Dense>

namespace framepot {

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::Vector4cd;
using namespace std::complex_literals;

Matrix2cd pauli_matrix(PauliOp p) {
  Matrix2cd m;
  switch (p) {
    case PauliOp::I: m << 1, 0, 0, 1; break;
    case PauliOp::X: m << 0, 1, 1, 0; break;
    case PauliOp::Y: m << 0, -1i, 1i, 0; break;
    case PauliOp::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

Matrix4cd kron2(const Matrix2cd& a, const Matrix2cd& b) {
  Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Matrix4cd hamiltonian(const std::array<PauliOp, 2>& h) {
  return kron2(pauli_matrix(h[0]), pauli_matrix(h[1]));
}

// eigenprojector (I + k H)/2 of an involution H onto the k = +-1 eigenspace
Matrix4cd projector(const Matrix4cd& H, int k) {
  return 0.5 * (Matrix4cd::Identity() + static_cast<double>(k) * H);
}

bool anticommute(PauliOp a, PauliOp b) {
  return a != PauliOp::I && b != PauliOp::I && a != b;
}

}  // namespace

const char* pauli_name(PauliOp p) {
  switch (p) {
    case PauliOp::I: return "I";
    case PauliOp::X: return "X";
    case PauliOp::Y: return "Y";
    case PauliOp::Z: return "Z";
  }
  return "?";
}

bool PauliPair::commutes() const {
  int anti = 0;
  for (int j = 0; j < 2; ++j) anti += anticommute(h1[static_cast<size_t>(j)], h2[static_cast<size_t>(j)]);
  return anti % 2 == 0;
}

BiFourierTable bifourier_coefficients(const PauliPair& pair) {
  const Matrix4cd H1 = hamiltonian(pair.h1);
  const Matrix4cd H2 = hamiltonian(pair.h2);
  const Vector4cd psi = Vector4cd::Ones() / 2.0;  // |+>|+>

  BiFourierTable table;
  for (int k1 : {-1, 1}) {
    for (int k2 : {-1, 1}) {
      for (int kp1 : {-1, 1}) {
        for (int kp2 : {-1, 1}) {
          const Matrix4cd M = projector(H2, -k2) * projector(H1, -k1) *
                              projector(H1, kp1) * projector(H2, kp2);
          const std::complex<double> c = psi.dot(M * psi);  // conjugates psi
          if (std::abs(c) < 1e-12) continue;
          table.coeff[Mode{static_cast<int8_t>(k1), static_cast<int8_t>(k2),
                           static_cast<int8_t>(kp1), static_cast<int8_t>(kp2)}] = c;
        }
      }
    }
  }
  return table;
}

Representation classify_representation(const BiFourierTable& table) {
  std::complex<double> sum = 0.0;
  bool ok = true;
  for (const auto& [mode, c] : table.coeff) {
    sum += c;
    if (std::abs(c.imag()) > 1e-10 || c.real() < -1e-10 || c.real() > 1.0 + 1e-10) ok = false;
  }
  if (std::abs(sum - 1.0) > 1e-10) ok = false;
  return ok ? Representation::probabilistic : Representation::non_probabilistic;
}

NoncommCensus census_2q() {
  constexpr PauliOp ops[4] = {PauliOp::I, PauliOp::X, PauliOp::Y, PauliOp::Z};
  NoncommCensus census;
  for (PauliOp a : ops) {
    for (PauliOp b : ops) {
      for (PauliOp c : ops) {
        for (PauliOp d : ops) {
          PauliPair pair{{a, b}, {c, d}};
          ++census.total;
          const bool comm = pair.commutes();
          if (!comm) ++census.noncommuting;
          const Representation rep = classify_representation(bifourier_coefficients(pair));
          if (rep == Representation::probabilistic) {
            if (!comm) ++census.probabilistic_noncommuting;
          } else {
            ++census.non_probabilistic;
          }
        }
      }
    }
  }
  return census;
}

}  // namespace framepot
