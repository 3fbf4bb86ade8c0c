#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wpw {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define WPW_ERROR(Name)                         \
    struct Name : Error {                       \
        using Error::Error;                     \
    }

WPW_ERROR(InvalidInstance);
WPW_ERROR(InfeasibleSchedule);
WPW_ERROR(NonMonotoneLoss);
WPW_ERROR(EmptyGraph);
WPW_ERROR(PreconditionViolated);
WPW_ERROR(NestedInput);
WPW_ERROR(EnumerationBudgetExceeded);
WPW_ERROR(InfeasibleCover);
WPW_ERROR(NumericalStall);
WPW_ERROR(NoCandidate);
WPW_ERROR(OverlappingRequests);
WPW_ERROR(BudgetExceeded);
WPW_ERROR(BadParams);
WPW_ERROR(ConstructionInfeasible);
WPW_ERROR(ParseError);

#undef WPW_ERROR

struct MalformedSchedule : Error {
    MalformedSchedule(std::size_t index, const std::string& what)
        : Error("event " + std::to_string(index) + ": " + what), event_index(index) {}
    std::size_t event_index;
};

}  // namespace wpw
