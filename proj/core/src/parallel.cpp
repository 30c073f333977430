#include "wzbc/parallel.hpp"

#include <cstdlib>
#include <string>

namespace wzbc {

std::size_t worker_count(std::size_t requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("WZBC_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0)
                return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

} // namespace wzbc
