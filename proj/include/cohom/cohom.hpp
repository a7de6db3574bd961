#pragma once

#include "cohom/builtin_groups.hpp"
#include "cohom/certificate.hpp"
#include "cohom/cochain.hpp"
#include "cohom/cohomology.hpp"
#include "cohom/cup.hpp"
#include "cohom/error.hpp"
#include "cohom/extension.hpp"
#include "cohom/group.hpp"
#include "cohom/integer.hpp"
#include "cohom/matrix.hpp"
#include "cohom/module.hpp"
#include "cohom/smith.hpp"
#include "cohom/trivializer.hpp"
#include "cohom/verify.hpp"
