#pragma once

#include <string>

#include "asa/cohomology.hpp"
#include "asa/galois_module.hpp"

namespace asa {

// Connected-group descriptor at the level the bound formulas consume: the
// Galois quotient, the torus character lattices with the restriction map, the
// central-torus part, the finite central-kernel dual, and the Picard data.
struct GroupDescriptor {
    std::string name;
    FiniteGroup gamma;
    GaloisModule t_hat;
    GaloisModule t_sc_hat;
    IntMatrix restriction_map;  // t_sc rank x t rank, column = image of a basis character
    GaloisModule z0_hat;
    GaloisModule q_hat;
    IntMatrix z0_to_q;
    int rank_r = 0;
    GaloisModule pic_bar;
    int pic_generators = 0;

    bool is_torus() const { return t_sc_hat.rank() == 0 && q_hat.rank() == 0; }
    bool is_semisimple() const { return z0_hat.rank() == 0; }
};

// Grammar: gl:N | sl:N | pgl:N | sp:2N | torus:r=R | resgm:group=cK[,h=i+j+..]
//          | normone:group=cK | prod:(entry,entry)
// Split families accept any gamma (acting trivially); twisted tori define
// their own gamma through group=.
GroupDescriptor catalog_entry(const std::string& spec, const FiniteGroup& gamma);
GroupDescriptor catalog_entry(const std::string& spec);

struct ComplexPair {
    TwoTermComplex c_hat;   // [t_hat -> t_sc_hat]
    TwoTermComplex c0_hat;  // [z0_hat -> q_hat]
};
ComplexPair complexes(const GroupDescriptor& d);

struct QuasiIsoReport {
    std::string entry;
    std::string gamma;
    FgAbGroup h1_c;
    FgAbGroup h1_c0;
    bool equal_order = false;
};
QuasiIsoReport quasi_iso_check(const GroupDescriptor& d);

std::vector<std::string> catalog_names();

}  // namespace asa
