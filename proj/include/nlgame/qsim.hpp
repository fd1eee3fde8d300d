// Copyright 2026 The nlgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NLGAME_QSIM_HPP
#define NLGAME_QSIM_HPP

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "nlgame/random.hpp"
#include "nlgame/rational.hpp"

// Exact small-n statevector engine. Every amplitude is a Gaussian integer over
// a power of sqrt(2); there is no floating point anywhere in this module, so
// "probability zero" is decided exactly.
namespace nlgame::qsim {

inline constexpr int kDefaultQubitCap = 20;

/// Gaussian integer re + im*i with overflow-checked arithmetic.
struct GaussianInt {
    std::int64_t re = 0;
    std::int64_t im = 0;

    bool is_zero() const { return re == 0 && im == 0; }
    GaussianInt conj() const { return {re, -im}; }
    friend bool operator==(const GaussianInt&, const GaussianInt&) = default;
};

GaussianInt operator+(GaussianInt a, GaussianInt b);
GaussianInt operator-(GaussianInt a, GaussianInt b);
GaussianInt operator*(GaussianInt a, GaussianInt b);
/// |z|^2 = re^2 + im^2, overflow-checked.
std::int64_t norm_squared(GaussianInt z);

/// (re + im*i) / sqrt(2)^scale, kept in canonical form: the integers are not
/// both even whenever scale >= 2.
class ExactAmplitude {
   public:
    ExactAmplitude() = default;
    ExactAmplitude(std::int64_t re, std::int64_t im, int sqrt2_scale);
    ExactAmplitude(GaussianInt value, int sqrt2_scale);

    std::int64_t re_int() const { return value_.re; }
    std::int64_t im_int() const { return value_.im; }
    int sqrt2_scale() const { return scale_; }
    GaussianInt gaussian() const { return value_; }

    bool is_zero() const { return value_.is_zero(); }
    ExactAmplitude conj() const { return {value_.conj(), scale_}; }
    Rational squared_magnitude() const;

    /// Re-expresses this value at a larger scale. Throws ExactnessError if the
    /// difference is odd (a lone sqrt(2) factor is not a Gaussian integer).
    GaussianInt at_scale(int target_scale) const;

    friend bool operator==(const ExactAmplitude&, const ExactAmplitude&) = default;

   private:
    void canonicalize();

    GaussianInt value_{};
    int scale_ = 0;
};

/// Throws ExactnessError when the operands' scales differ by an odd amount.
ExactAmplitude operator+(const ExactAmplitude& a, const ExactAmplitude& b);
ExactAmplitude operator-(const ExactAmplitude& a, const ExactAmplitude& b);
ExactAmplitude operator*(const ExactAmplitude& a, const ExactAmplitude& b);
std::ostream& operator<<(std::ostream& out, const ExactAmplitude& a);

enum class MeasBasis { Computational, Diagonal, Circular };

std::string to_string(MeasBasis basis);

/// The two components (coefficient of |0>, coefficient of |1>) of a basis
/// vector, over sqrt(2)^scale.
struct BasisKet {
    GaussianInt zero;
    GaussianInt one;
    int sqrt2_scale;
};

BasisKet basis_ket(MeasBasis basis, int bit);

/// Amplitude array without the unit-norm invariant: the result of projecting
/// some qubits of a state onto basis bras. The squared norm of the projection
/// is the probability of those outcomes.
///
/// Qubit 1 is the most significant bit of the index.
class Amplitudes {
   public:
    Amplitudes(int num_qubits, int sqrt2_scale, std::vector<GaussianInt> values);

    int num_qubits() const { return num_qubits_; }
    int sqrt2_scale() const { return scale_; }
    std::span<const GaussianInt> values() const { return values_; }

    /// Applies the bra <basis, bit| to qubit `qubit` (1-based), removing it.
    /// Qubits after it shift down by one.
    Amplitudes project(int qubit, MeasBasis basis, int bit) const;

    /// Sum of |a|^2 as an exact rational.
    Rational squared_norm() const;

    /// Divides out common factors of two while the scale allows it.
    void canonicalize();

   private:
    int num_qubits_;
    int scale_;
    std::vector<GaussianInt> values_;
};

/// Normalized dense state over n qubits sharing one sqrt(2) scale.
class StateVector {
   public:
    /// Validates the unit-norm invariant exactly. The amplitudes are brought
    /// to a common scale; mixed scale parity throws ExactnessError.
    StateVector(int num_qubits, std::span<const ExactAmplitude> amplitudes,
                int qubit_cap = kDefaultQubitCap);

    int num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return values_.size(); }
    int sqrt2_scale() const { return scale_; }

    ExactAmplitude amplitude(std::size_t index) const { return {values_[index], scale_}; }
    std::span<const GaussianInt> raw_values() const { return values_; }

    Rational squared_norm() const;

    Amplitudes as_amplitudes() const { return {num_qubits_, scale_, values_}; }

    /// One line per nonzero amplitude: "index_bits re_int im_int scale".
    std::string debug_dump() const;

    /// Builds from integers sharing `sqrt2_scale`, checking the unit norm.
    static StateVector from_raw(int num_qubits, int sqrt2_scale, std::vector<GaussianInt> values,
                                int qubit_cap = kDefaultQubitCap);

    friend bool operator==(const StateVector&, const StateVector&) = default;

   private:
    StateVector() = default;
    void canonicalize();

    int num_qubits_;
    int scale_;
    std::vector<GaussianInt> values_;
};

StateVector make_ghz(int n, int qubit_cap = kDefaultQubitCap);

/// Single-qubit state for the given basis vector.
StateVector basis_state(MeasBasis basis, int bit);

StateVector tensor_product(const StateVector& left, const StateVector& right,
                           int qubit_cap = kDefaultQubitCap);

struct MeasurementRecord {
    int qubit_index;
    MeasBasis basis;
    int outcome;
};

struct MeasurementResult {
    int outcome;
    StateVector collapsed;
    Rational probability;
};

/// Projective measurement of one qubit. The outcome is drawn from `source`
/// with its exact Born probability; the collapsed state keeps all n qubits,
/// with the measured one in the selected basis vector. Throws ExactnessError
/// when the renormalization factor is not a power of sqrt(2).
MeasurementResult measure_qubit(const StateVector& state, int qubit_index, MeasBasis basis,
                                OutcomeSource& source);

struct QubitOutcome {
    int qubit_index;
    MeasBasis basis;
    int bit;
};

/// Exact probability of the listed single-qubit outcomes; unlisted qubits are
/// marginalized. Throws ArgumentError on duplicate or invalid qubit indices.
Rational outcome_probability(const StateVector& state, std::span<const QubitOutcome> assignment);

}  // namespace nlgame::qsim

#endif  // NLGAME_QSIM_HPP
