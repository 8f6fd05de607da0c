#pragma once

#include <stdexcept>
#include <string>

namespace bfmn {

// Base class for all pipeline errors. The CLI maps these to exit code 1;
// UsageError maps to exit code 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : Error {
    using Error::Error;
};
struct FileError : Error {
    using Error::Error;
};
struct FormatError : Error {
    using Error::Error;
};

// probe
struct EndpointError : Error {
    using Error::Error;
};
struct TargetNotReached : Error {
    TargetNotReached(const std::string& cue, std::size_t accepted, std::size_t attempts)
        : Error("target not reached for cue '" + cue + "': accepted " +
                std::to_string(accepted) + " after " + std::to_string(attempts) + " attempts"),
          cue(cue), accepted(accepted), attempts(attempts) {}
    std::string cue;
    std::size_t accepted;
    std::size_t attempts;
};
struct ReplayExhausted : Error {
    using Error::Error;
};

// normalize
struct EmptyAfterCleaning : Error {
    using Error::Error;
};

// valence
struct EmptyCorpus : Error {
    using Error::Error;
};
struct DegenerateSample : Error {
    using Error::Error;
};

// network
struct MissingLabel : Error {
    explicit MissingLabel(const std::string& stem)
        : Error("no label for stem '" + stem + "'"), stem(stem) {}
    std::string stem;
};
struct UnknownCue : Error {
    using Error::Error;
};

// affect
struct NoPoints : Error {
    using Error::Error;
};

// metrics / report
struct EmptyFrame : Error {
    using Error::Error;
};
struct DuplicateCorpusId : Error {
    using Error::Error;
};

}  // namespace bfmn
