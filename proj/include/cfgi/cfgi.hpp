#pragma once

#include "cfgi/cli.hpp"
#include "cfgi/closure.hpp"
#include "cfgi/diagram.hpp"
#include "cfgi/differential.hpp"
#include "cfgi/dyck.hpp"
#include "cfgi/errors.hpp"
#include "cfgi/grammar.hpp"
#include "cfgi/group.hpp"
#include "cfgi/oracle.hpp"
#include "cfgi/report.hpp"
#include "cfgi/semiring.hpp"
#include "cfgi/util.hpp"
#include "cfgi/verdict.hpp"
