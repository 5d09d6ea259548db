#ifndef ZETAREG_CONFIG_HPP
#define ZETAREG_CONFIG_HPP

namespace zetareg {

// Global cap on brute-force candidate enumeration. Initialized from the
// ZETAREG_BUDGET environment variable when set, else 10^8.
unsigned long long enumeration_budget();
void set_enumeration_budget(unsigned long long budget);

} // namespace zetareg

#endif
