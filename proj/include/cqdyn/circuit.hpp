#pragma once

#include <string>

#include "cqdyn/matrix4.hpp"

namespace cqdyn {

// Physical knobs of the two-qubit circuit. Energies in micro-eV; gamma in
// units of 1/time_scale; times throughout the library are the dimensionless
// product (time_scale * t). Defaults give a meaningful bare `simulate` run.
//
// Basis convention everywhere: (|00>, |01>, |10>, |11>) with |n1 n2>.
struct CircuitParams {
    double ej1 = 30.0; // Josephson energy, qubit 1
    double ej2 = 30.0; // Josephson energy, qubit 2
    double em = 6.0;   // qubit-qubit coupling energy
    double ec1 = 100.0;
    double ec2 = 100.0;
    double ng1 = 0.5; // normalized gate charge, co-degeneracy point
    double ng2 = 0.5;
    double gamma = 0.0;      // phase decoherence rate
    double time_scale = 1.0; // the scale making reported times dimensionless

    void validate() const {
        auto require = [](bool ok, const std::string& what) {
            if (!ok) throw ValidationError("CircuitParams: " + what);
        };
        require(ej1 >= 0.0, "ej1 must be >= 0");
        require(ej2 >= 0.0, "ej2 must be >= 0");
        require(em >= 0.0, "em must be >= 0");
        require(ec1 > 0.0, "ec1 must be > 0");
        require(ec2 > 0.0, "ec2 must be > 0");
        require(ng1 >= 0.0 && ng1 <= 1.0, "ng1 must lie in [0, 1]");
        require(ng2 >= 0.0 && ng2 <= 1.0, "ng2 must lie in [0, 1]");
        require(gamma >= 0.0, "gamma must be >= 0");
        require(time_scale > 0.0, "time_scale must be > 0");
    }
};

// Box capacitances, attofarads. charge_unit is the 4e^2 prefactor expressed
// in whatever energy*capacitance unit the caller works in.
struct Capacitances {
    double csum1;
    double csum2;
    double cm;
    double charge_unit;

    void validate() const {
        if (!(csum1 > 0.0)) throw ValidationError("Capacitances: csum1 must be > 0");
        if (!(csum2 > 0.0)) throw ValidationError("Capacitances: csum2 must be > 0");
        if (cm < 0.0) throw ValidationError("Capacitances: cm must be >= 0");
        if (!(charge_unit > 0.0)) throw ValidationError("Capacitances: charge_unit must be > 0");
    }
};

struct ChargingEnergies {
    double ec1;
    double ec2;
    double em;
};

// Charging and coupling energies from the capacitance network. The shared
// capacitor couples the boxes, so each charging energy carries the *other*
// box's total capacitance in its numerator.
inline ChargingEnergies energies_from_capacitances(const Capacitances& c) {
    c.validate();
    const double det = c.csum1 * c.csum2 - c.cm * c.cm;
    if (det <= 0.0)
        throw DegenerateDenominatorError(
            "energies_from_capacitances: csum1*csum2 - cm^2 must be positive");
    return ChargingEnergies{
        c.charge_unit * c.csum2 / (2.0 * det),
        c.charge_unit * c.csum1 / (2.0 * det),
        c.charge_unit * c.cm / det,
    };
}

// Electrostatic energy of the charge configuration (n1, n2).
inline double charging_offset(const CircuitParams& p, int n1, int n2) {
    const double d1 = p.ng1 - static_cast<double>(n1);
    const double d2 = p.ng2 - static_cast<double>(n2);
    return p.ec1 * d1 * d1 + p.ec2 * d2 * d2 + p.em * d1 * d2;
}

// Four-level Hamiltonian in the charge basis. Diagonal entries are the
// charging offsets; a single Cooper-pair tunneling event on qubit k
// contributes -E_Jk/2; there is no double-flip term, so the (|00>,|11>) and
// (|01>,|10>) entries stay zero. Real-symmetric by construction.
inline Hermitian4 build_hamiltonian(const CircuitParams& p) {
    p.validate();
    Matrix4 h;
    // Basis index = 2*n1 + n2.
    for (int n1 = 0; n1 <= 1; ++n1)
        for (int n2 = 0; n2 <= 1; ++n2) h(2 * n1 + n2, 2 * n1 + n2) = charging_offset(p, n1, n2);

    const double j1 = -0.5 * p.ej1; // n1 flips: |00>-|10>, |01>-|11>
    h(0, 2) = j1;
    h(2, 0) = j1;
    h(1, 3) = j1;
    h(3, 1) = j1;

    const double j2 = -0.5 * p.ej2; // n2 flips: |00>-|01>, |10>-|11>
    h(0, 1) = j2;
    h(1, 0) = j2;
    h(2, 3) = j2;
    h(3, 2) = j2;

    return Hermitian4(h);
}

} // namespace cqdyn
