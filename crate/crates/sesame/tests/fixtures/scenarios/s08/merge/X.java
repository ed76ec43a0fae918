import a.A;
import b.B;
import d.D;
import c.C;

class X {}
