#ifndef PPTLAB_ERRORS_HPP
#define PPTLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pptlab {

// Base class for every error thrown by the library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

#define PPTLAB_DEFINE_ERROR(name)                                  \
    class name : public error {                                    \
    public:                                                        \
        explicit name(const std::string& msg) : error(msg) {}      \
    }

PPTLAB_DEFINE_ERROR(dimension_mismatch);
PPTLAB_DEFINE_ERROR(not_hermitian);
PPTLAB_DEFINE_ERROR(not_psd);
PPTLAB_DEFINE_ERROR(no_convergence);
PPTLAB_DEFINE_ERROR(bad_parameter);
PPTLAB_DEFINE_ERROR(not_faithful);
PPTLAB_DEFINE_ERROR(not_a_state);
PPTLAB_DEFINE_ERROR(not_cp);
PPTLAB_DEFINE_ERROR(not_entangled);
PPTLAB_DEFINE_ERROR(condition_fails);
PPTLAB_DEFINE_ERROR(normality_fails);
PPTLAB_DEFINE_ERROR(not_hermitian_preserving);
PPTLAB_DEFINE_ERROR(bad_config);

#undef PPTLAB_DEFINE_ERROR

} // namespace pptlab

#endif
