namespace dclab {}
