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

#include "nlgame/qsim.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "nlgame/errors.hpp"

namespace nlgame::qsim {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw ExactnessError("integer overflow in amplitude arithmetic");
    }
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) {
        throw ExactnessError("integer overflow in amplitude arithmetic");
    }
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw ExactnessError("integer overflow in amplitude arithmetic");
    }
    return r;
}

std::int64_t pow2(int e) {
    if (e < 0 || e > 62) {
        throw ExactnessError("power of two out of range: 2^" + std::to_string(e));
    }
    return std::int64_t{1} << e;
}

GaussianInt scale_by(GaussianInt z, std::int64_t k) {
    return {checked_mul(z.re, k), checked_mul(z.im, k)};
}

/// sum |z|^2 / 2^scale
Rational squared_norm_of(std::span<const GaussianInt> values, int scale) {
    std::int64_t total = 0;
    for (const auto& z : values) {
        total = checked_add(total, norm_squared(z));
    }
    // Strip shared factors of two first so large scales stay representable.
    while (scale > 0 && total != 0 && total % 2 == 0) {
        total /= 2;
        --scale;
    }
    if (total == 0) {
        return Rational(0);
    }
    return Rational(total, pow2(scale));
}

void check_qubit_count(int n, int cap) {
    if (n < 1 || n > cap) {
        throw SizeError("qubit count " + std::to_string(n) + " outside [1, " + std::to_string(cap) +
                        "]");
    }
}

void halve_while_even(std::vector<GaussianInt>& values, int& scale) {
    while (scale >= 2) {
        bool all_even = std::all_of(values.begin(), values.end(), [](const GaussianInt& z) {
            return z.re % 2 == 0 && z.im % 2 == 0;
        });
        bool any_nonzero = std::any_of(values.begin(), values.end(),
                                       [](const GaussianInt& z) { return !z.is_zero(); });
        if (!all_even || !any_nonzero) {
            break;
        }
        for (auto& z : values) {
            z.re /= 2;
            z.im /= 2;
        }
        scale -= 2;
    }
}

std::string index_bits(std::size_t index, int num_qubits) {
    std::string bits(static_cast<std::size_t>(num_qubits), '0');
    for (int q = 0; q < num_qubits; ++q) {
        if ((index >> (num_qubits - 1 - q)) & 1U) {
            bits[static_cast<std::size_t>(q)] = '1';
        }
    }
    return bits;
}

}  // namespace

GaussianInt operator+(GaussianInt a, GaussianInt b) {
    return {checked_add(a.re, b.re), checked_add(a.im, b.im)};
}

GaussianInt operator-(GaussianInt a, GaussianInt b) {
    return {checked_sub(a.re, b.re), checked_sub(a.im, b.im)};
}

GaussianInt operator*(GaussianInt a, GaussianInt b) {
    return {checked_sub(checked_mul(a.re, b.re), checked_mul(a.im, b.im)),
            checked_add(checked_mul(a.re, b.im), checked_mul(a.im, b.re))};
}

std::int64_t norm_squared(GaussianInt z) {
    return checked_add(checked_mul(z.re, z.re), checked_mul(z.im, z.im));
}

// ---------------------------------------------------------------------------
// ExactAmplitude

ExactAmplitude::ExactAmplitude(std::int64_t re, std::int64_t im, int sqrt2_scale)
    : ExactAmplitude(GaussianInt{re, im}, sqrt2_scale) {}

ExactAmplitude::ExactAmplitude(GaussianInt value, int sqrt2_scale)
    : value_(value), scale_(sqrt2_scale) {
    if (sqrt2_scale < 0) {
        throw ArgumentError("sqrt2_scale must be non-negative");
    }
    canonicalize();
}

void ExactAmplitude::canonicalize() {
    if (value_.is_zero()) {
        scale_ = 0;
        return;
    }
    while (scale_ >= 2 && value_.re % 2 == 0 && value_.im % 2 == 0) {
        value_.re /= 2;
        value_.im /= 2;
        scale_ -= 2;
    }
}

Rational ExactAmplitude::squared_magnitude() const {
    GaussianInt v = value_;
    return squared_norm_of(std::span<const GaussianInt>(&v, 1), scale_);
}

GaussianInt ExactAmplitude::at_scale(int target_scale) const {
    int diff = target_scale - scale_;
    if (diff < 0) {
        throw ExactnessError("cannot lower the scale of a canonical amplitude");
    }
    if (value_.is_zero()) {
        return {};
    }
    if (diff % 2 != 0) {
        throw ExactnessError("odd sqrt(2) scale difference is not representable");
    }
    return scale_by(value_, pow2(diff / 2));
}

ExactAmplitude operator+(const ExactAmplitude& a, const ExactAmplitude& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int scale = std::max(a.sqrt2_scale(), b.sqrt2_scale());
    return {a.at_scale(scale) + b.at_scale(scale), scale};
}

ExactAmplitude operator-(const ExactAmplitude& a, const ExactAmplitude& b) {
    return a + ExactAmplitude(GaussianInt{-b.re_int(), -b.im_int()}, b.sqrt2_scale());
}

ExactAmplitude operator*(const ExactAmplitude& a, const ExactAmplitude& b) {
    return {a.gaussian() * b.gaussian(), a.sqrt2_scale() + b.sqrt2_scale()};
}

std::ostream& operator<<(std::ostream& out, const ExactAmplitude& a) {
    return out << "(" << a.re_int() << (a.im_int() < 0 ? "" : "+") << a.im_int() << "i)/sqrt2^"
               << a.sqrt2_scale();
}

std::string to_string(MeasBasis basis) {
    switch (basis) {
        case MeasBasis::Computational:
            return "computational";
        case MeasBasis::Diagonal:
            return "diagonal";
        case MeasBasis::Circular:
            return "circular";
    }
    return "?";
}

BasisKet basis_ket(MeasBasis basis, int bit) {
    if (bit != 0 && bit != 1) {
        throw ArgumentError("basis bit must be 0 or 1");
    }
    switch (basis) {
        case MeasBasis::Computational:
            return bit == 0 ? BasisKet{{1, 0}, {0, 0}, 0} : BasisKet{{0, 0}, {1, 0}, 0};
        case MeasBasis::Diagonal:
            return bit == 0 ? BasisKet{{1, 0}, {1, 0}, 1} : BasisKet{{1, 0}, {-1, 0}, 1};
        case MeasBasis::Circular:
            return bit == 0 ? BasisKet{{1, 0}, {0, 1}, 1} : BasisKet{{1, 0}, {0, -1}, 1};
    }
    throw ArgumentError("unknown basis");
}

// ---------------------------------------------------------------------------
// Amplitudes

Amplitudes::Amplitudes(int num_qubits, int sqrt2_scale, std::vector<GaussianInt> values)
    : num_qubits_(num_qubits), scale_(sqrt2_scale), values_(std::move(values)) {
    if (num_qubits < 0 || num_qubits > 62 ||
        values_.size() != (std::size_t{1} << static_cast<unsigned>(num_qubits))) {
        throw ArgumentError("amplitude array size does not match qubit count");
    }
}

Amplitudes Amplitudes::project(int qubit, MeasBasis basis, int bit) const {
    if (qubit < 1 || qubit > num_qubits_) {
        throw ArgumentError("qubit index " + std::to_string(qubit) + " outside [1, " +
                            std::to_string(num_qubits_) + "]");
    }
    const BasisKet ket = basis_ket(basis, bit);
    const GaussianInt bra0 = ket.zero.conj();
    const GaussianInt bra1 = ket.one.conj();

    const unsigned shift = static_cast<unsigned>(num_qubits_ - qubit);
    const std::size_t low_mask = (std::size_t{1} << shift) - 1;
    const std::size_t half = values_.size() / 2;
    std::vector<GaussianInt> out(half);
    for (std::size_t a = 0; a < half; ++a) {
        std::size_t high = (a & ~low_mask) << 1;
        std::size_t low = a & low_mask;
        std::size_t i0 = high | low;
        std::size_t i1 = i0 | (std::size_t{1} << shift);
        out[a] = bra0 * values_[i0] + bra1 * values_[i1];
    }
    Amplitudes result(num_qubits_ - 1, scale_ + ket.sqrt2_scale, std::move(out));
    result.canonicalize();
    return result;
}

Rational Amplitudes::squared_norm() const { return squared_norm_of(values_, scale_); }

void Amplitudes::canonicalize() { halve_while_even(values_, scale_); }

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int num_qubits, std::span<const ExactAmplitude> amplitudes, int qubit_cap) {
    check_qubit_count(num_qubits, qubit_cap);
    if (amplitudes.size() != (std::size_t{1} << static_cast<unsigned>(num_qubits))) {
        throw ArgumentError("expected 2^n amplitudes");
    }
    int scale = 0;
    for (const auto& a : amplitudes) {
        if (!a.is_zero()) scale = std::max(scale, a.sqrt2_scale());
    }
    std::vector<GaussianInt> values;
    values.reserve(amplitudes.size());
    for (const auto& a : amplitudes) {
        values.push_back(a.at_scale(scale));
    }
    *this = from_raw(num_qubits, scale, std::move(values), qubit_cap);
}

StateVector StateVector::from_raw(int num_qubits, int sqrt2_scale, std::vector<GaussianInt> values,
                                  int qubit_cap) {
    check_qubit_count(num_qubits, qubit_cap);
    if (values.size() != (std::size_t{1} << static_cast<unsigned>(num_qubits))) {
        throw ArgumentError("expected 2^n amplitudes");
    }
    StateVector s;
    s.num_qubits_ = num_qubits;
    s.scale_ = sqrt2_scale;
    s.values_ = std::move(values);
    if (s.squared_norm() != 1) {
        throw ExactnessError("state is not normalized: squared norm " +
                             to_fraction_string(s.squared_norm()));
    }
    s.canonicalize();
    return s;
}

void StateVector::canonicalize() { halve_while_even(values_, scale_); }

Rational StateVector::squared_norm() const { return squared_norm_of(values_, scale_); }

std::string StateVector::debug_dump() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i].is_zero()) continue;
        out << index_bits(i, num_qubits_) << ' ' << values_[i].re << ' ' << values_[i].im << ' '
            << scale_ << '\n';
    }
    return out.str();
}

StateVector make_ghz(int n, int qubit_cap) {
    check_qubit_count(n, qubit_cap);
    std::vector<GaussianInt> values(std::size_t{1} << static_cast<unsigned>(n));
    values.front() = {1, 0};
    values.back() = {1, 0};
    return StateVector::from_raw(n, 1, std::move(values), qubit_cap);
}

StateVector basis_state(MeasBasis basis, int bit) {
    BasisKet ket = basis_ket(basis, bit);
    return StateVector::from_raw(1, ket.sqrt2_scale, {ket.zero, ket.one});
}

StateVector tensor_product(const StateVector& left, const StateVector& right, int qubit_cap) {
    int n = left.num_qubits() + right.num_qubits();
    check_qubit_count(n, qubit_cap);
    auto lv = left.raw_values();
    auto rv = right.raw_values();
    std::vector<GaussianInt> values;
    values.reserve(lv.size() * rv.size());
    for (const auto& a : lv) {
        for (const auto& b : rv) {
            values.push_back(a * b);
        }
    }
    return StateVector::from_raw(n, left.sqrt2_scale() + right.sqrt2_scale(), std::move(values),
                                 qubit_cap);
}

MeasurementResult measure_qubit(const StateVector& state, int qubit_index, MeasBasis basis,
                                OutcomeSource& source) {
    const int n = state.num_qubits();
    if (qubit_index < 1 || qubit_index > n) {
        throw ArgumentError("qubit index " + std::to_string(qubit_index) + " outside [1, " +
                            std::to_string(n) + "]");
    }
    Amplitudes full = state.as_amplitudes();
    Amplitudes branch[2] = {full.project(qubit_index, basis, 0), full.project(qubit_index, basis, 1)};
    Rational probs[2] = {branch[0].squared_norm(), branch[1].squared_norm()};
    if (probs[0] + probs[1] != 1) {
        throw ExactnessError("measurement probabilities do not sum to one");
    }
    const int outcome = static_cast<int>(source.choose(probs));
    const Rational p = probs[outcome];
    const Amplitudes& kept = branch[outcome];

    // Re-insert the measured qubit as the selected basis ket.
    const BasisKet ket = basis_ket(basis, outcome);
    const unsigned shift = static_cast<unsigned>(n - qubit_index);
    const std::size_t low_mask = (std::size_t{1} << shift) - 1;
    std::vector<GaussianInt> values(state.dimension());
    auto kv = kept.values();
    for (std::size_t a = 0; a < kv.size(); ++a) {
        std::size_t i0 = ((a & ~low_mask) << 1) | (a & low_mask);
        values[i0] = ket.zero * kv[a];
        values[i0 | (std::size_t{1} << shift)] = ket.one * kv[a];
    }

    // Squared norm is p = 2^-t; dividing by sqrt(p) lowers the scale by t.
    if (p.numerator() != 1 || !std::has_single_bit(static_cast<std::uint64_t>(p.denominator()))) {
        throw ExactnessError("collapse renormalization factor " + to_fraction_string(p) +
                             " is not a power of 1/2");
    }
    const int t = std::countr_zero(static_cast<std::uint64_t>(p.denominator()));
    const int scale = kept.sqrt2_scale() + ket.sqrt2_scale - t;
    if (scale < 0) {
        throw ExactnessError("negative scale after renormalization");
    }
    return MeasurementResult{outcome, StateVector::from_raw(n, scale, std::move(values), n), p};
}

Rational outcome_probability(const StateVector& state, std::span<const QubitOutcome> assignment) {
    const int n = state.num_qubits();
    std::vector<QubitOutcome> sorted(assignment.begin(), assignment.end());
    for (const auto& a : sorted) {
        if (a.qubit_index < 1 || a.qubit_index > n) {
            throw ArgumentError("qubit index " + std::to_string(a.qubit_index) + " outside [1, " +
                                std::to_string(n) + "]");
        }
        if (a.bit != 0 && a.bit != 1) {
            throw ArgumentError("outcome bit must be 0 or 1");
        }
    }
    // Descending order keeps the indices of not-yet-projected qubits stable.
    std::sort(sorted.begin(), sorted.end(),
              [](const QubitOutcome& x, const QubitOutcome& y) { return x.qubit_index > y.qubit_index; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].qubit_index == sorted[i - 1].qubit_index) {
            throw ArgumentError("duplicate qubit index " + std::to_string(sorted[i].qubit_index));
        }
    }
    Amplitudes amps = state.as_amplitudes();
    for (const auto& a : sorted) {
        amps = amps.project(a.qubit_index, a.basis, a.bit);
    }
    return amps.squared_norm();
}

}  // namespace nlgame::qsim
