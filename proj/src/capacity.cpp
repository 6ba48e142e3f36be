#include "gramops/capacity.hpp"

#include <cstdlib>
#include <string>

namespace gramops {

int Capacity::matrix_free_qubits() {
    static const int limit = [] {
        if (const char* env = std::getenv("GRAMOPS_CAPACITY")) {
            try {
                int v = std::stoi(env);
                if (v >= 1 && v <= 40) return v;
            } catch (...) {
            }
        }
        return 26;
    }();
    return limit;
}

}  // namespace gramops
