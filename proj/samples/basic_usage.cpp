// Small tour of the library: invariants of a Mukai vector, an isometry word,
// and the rank-2 partition function checked three ways.

#include "k3tk/k3tk.hpp"

#include <iostream>

int main() {
    using namespace k3tk;
    const even_lattice h2 = even_lattice::rank_one(2);

    const mukai_vector v{3, {0}, -4};
    std::cout << "v = " << v << ", <v^2> = " << square(v, h2) << ", dim M(v) = " << moduli_dim(v, h2)
              << ", chi = " << euler_characteristic(v, h2) << '\n';

    const isometry_word w{isometry_elem::dualize(), isometry_elem::reflect({1, {0}, 1}, h2), isometry_elem::translate({1}, h2)};
    const mukai_vector image = apply_word(w, v, h2);
    std::cout << "D R T(v) = " << image << ", square kept: " << (square(image, h2) == square(v, h2)) << '\n';

    const qseries direct = z_psu_direct(2, {0}, rational(4), h2);
    const qseries hecke = z_psu_hecke(2, {0}, rational(4), h2);
    std::cout << "Z_2^0: direct == hecke: " << (direct == hecke) << ", coefficient of q^0 = " << direct.coefficient(0) << '\n';

    const evaluation z = evaluate_z_psu(1, {0}, rational(40), h2, complex(0.0, 1.0));
    std::cout << "Z_1^0(i) = " << z.value.real() << " (tail <= " << z.tail << ")\n";
}
