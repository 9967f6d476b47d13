#pragma once
#include <stdexcept>
#include <string>

namespace bk {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define BK_DEFINE_ERROR(Name)                                   \
    struct Name : Error {                                       \
        explicit Name(const std::string& what) : Error(what) {} \
    }

BK_DEFINE_ERROR(InvalidBase);
BK_DEFINE_ERROR(LengthMismatch);
BK_DEFINE_ERROR(IoError);
BK_DEFINE_ERROR(BudgetTooSmall);
BK_DEFINE_ERROR(UnsupportedT);
BK_DEFINE_ERROR(InconsistentK);
BK_DEFINE_ERROR(NotAPath);
BK_DEFINE_ERROR(NegativeWeight);
BK_DEFINE_ERROR(NegativeCycle);
BK_DEFINE_ERROR(VertexNotFound);
BK_DEFINE_ERROR(SameEndpoints);
BK_DEFINE_ERROR(NoPathWithinBound);
BK_DEFINE_ERROR(ConfigError);

#undef BK_DEFINE_ERROR

}  // namespace bk
