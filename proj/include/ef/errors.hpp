#pragma once

#include <stdexcept>
#include <string>

namespace ef {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define EF_DEFINE_ERROR(Name)                                               \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what) : Error(what) {}             \
    }

EF_DEFINE_ERROR(EmptyInput);
EF_DEFINE_ERROR(EmptyGroup);
EF_DEFINE_ERROR(ParseError);
EF_DEFINE_ERROR(IoError);
EF_DEFINE_ERROR(DimensionMismatch);
EF_DEFINE_ERROR(UnknownWord);
EF_DEFINE_ERROR(AllWordsOOV);
EF_DEFINE_ERROR(EmptySentence);
EF_DEFINE_ERROR(ClassOutOfRange);
EF_DEFINE_ERROR(EmptyCorpus);
EF_DEFINE_ERROR(ZeroMass);
EF_DEFINE_ERROR(LengthMismatch);
EF_DEFINE_ERROR(TooShort);
EF_DEFINE_ERROR(DegenerateFit);
EF_DEFINE_ERROR(SchemeMismatch);
EF_DEFINE_ERROR(ConfigError);

#undef EF_DEFINE_ERROR

} // namespace ef
