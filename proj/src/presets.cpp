#include "zeno/presets.hpp"

#include <cmath>

#include "zeno/errors.hpp"

namespace zeno {

namespace {

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, //
        1.0, 0.0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, //
        0.0, -1.0;
    return m;
}

} // namespace

Preset make_preset(const std::string& name, double omega) {
    if (!std::isfinite(omega) || omega == 0.0) {
        throw ValidationError("preset: omega must be finite and nonzero");
    }
    if (name == "two-level-rabi") {
        return Preset{name, "H = (omega/2)·sigma_x, A = sigma_z; full Rabi flopping between "
                            "the A eigenstates",
                      0.5 * omega * pauli_x(), pauli_z()};
    }
    if (name == "commuting") {
        return Preset{name, "H = sigma_z, A = sigma_z; observable commutes with the "
                            "Hamiltonian, so outcomes never drift",
                      pauli_z(), pauli_z()};
    }
    if (name == "three-level") {
        // Fixed nondegenerate three-level system, [H, A] != 0.
        ComplexMatrix h(3, 3);
        h << 0.0, 0.4, 0.0, //
            0.4, 1.0, 0.3,  //
            0.0, 0.3, 2.2;
        ComplexMatrix a(3, 3);
        a << 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0,  //
            0.0, 0.0, 2.0;
        return Preset{name, "fixed 3x3 Hermitian H (nondegenerate), A = diag(0, 1, 2)", h, a};
    }
    throw ValidationError("preset: unknown preset '" + name + "'");
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"two-level-rabi", "commuting", "three-level"};
    return names;
}

} // namespace zeno
