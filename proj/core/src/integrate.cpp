namespace scal {}
