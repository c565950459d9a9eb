#ifndef PIBELL_WITNESS_DATA_HPP
#define PIBELL_WITNESS_DATA_HPP

namespace pibell {

enum class WitnessContext { pseudospin, type1 };

// Collective statistics (x, y, z) normalised per particle.
struct WitnessData {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    WitnessContext context = WitnessContext::pseudospin;
};

}  // namespace pibell

#endif
