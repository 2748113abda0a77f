#ifndef RAUZY_TESTS_COMMON_HPP
#define RAUZY_TESTS_COMMON_HPP

#include <string>

#include "rauzy/adic.hpp"
#include "rauzy/parse.hpp"

namespace fixture {

inline const std::string data_dir = RAUZY_TEST_DATA;

/// a->ab, b->ac, c->a and its flip a->ab, b->ca, c->a.
inline const rauzy::SubstitutionSet& tribonacci() {
    static const rauzy::SubstitutionSet set(rauzy::load_substitution_set(data_dir + "/tribonacci.subs"));
    return set;
}

/// 0->0, 1->10 and 0->01, 1->1.
inline const rauzy::SubstitutionSet& sturmian() {
    static const rauzy::SubstitutionSet set(rauzy::load_substitution_set(data_dir + "/sturmian.subs"));
    return set;
}

inline const rauzy::IntMatrix tribonacci_matrix{{1, 1, 1}, {1, 0, 0}, {0, 1, 0}};

} // namespace fixture

#endif // RAUZY_TESTS_COMMON_HPP
